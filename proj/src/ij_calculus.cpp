#include "quiverconn/ij_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include <Eigen/Eigenvalues>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

std::vector<NodeId> sorted(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool is_diagonal(const ExactMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c && !m(r, c).is_zero()) return false;
  return true;
}

void require_complete(const IJRep& rep, const char* what) {
  if (!rep.data.is_complete()) throw InvalidInput(std::string(what) + " needs complete data");
}

ExactMatrix rows_of(const ExactMatrix& m, std::size_t r0, std::size_t n) { return m.block(r0, 0, n, m.cols()); }
ExactMatrix cols_of(const ExactMatrix& m, std::size_t c0, std::size_t n) { return m.block(0, c0, m.rows(), n); }

// Minimal-polynomial multiplicities of exact candidate roots; empty when the
// candidates do not account for the whole space.
std::vector<int> exact_multiplicities(const ExactMatrix& m, const std::vector<ExactComplex>& candidates) {
  const std::size_t n = m.rows();
  std::vector<int> mult;
  std::size_t covered = 0;
  for (const auto& y : candidates) {
    const ExactMatrix shift = shifted(m, y);
    ExactMatrix power = shift;
    std::size_t r = rank(power);
    if (r == n) return {};
    int k = 1;
    for (;;) {
      power = power * shift;
      const std::size_t next = rank(power);
      if (next == r) break;
      r = next;
      ++k;
    }
    mult.push_back(k);
    covered += n - r;
  }
  if (covered != n) return {};
  return mult;
}

std::vector<int> numeric_multiplicities(const CMatrix& m, const std::vector<ExactComplex>& roots) {
  const auto n = m.rows();
  std::vector<int> mult;
  for (const auto& y : roots) {
    const CMatrix shift = m - y.to_complex() * CMatrix::Identity(n, n);
    CMatrix power = shift;
    std::size_t r = numerical_rank(power);
    int k = 1;
    while (k < n) {
      power = power * shift;
      const std::size_t next = numerical_rank(power);
      if (next == r) break;
      r = next;
      ++k;
    }
    mult.push_back(k);
  }
  return mult;
}

// Greedy clustering of eigenvalues; returns cluster means.
std::vector<std::complex<double>> cluster(const Eigen::VectorXcd& ev, double tol) {
  std::vector<std::vector<std::complex<double>>> groups;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    bool placed = false;
    for (auto& g : groups) {
      std::complex<double> mean = 0;
      for (auto z : g) mean += z;
      mean /= static_cast<double>(g.size());
      if (std::abs(mean - ev(k)) <= tol) {
        g.push_back(ev(k));
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({ev(k)});
  }
  std::vector<std::complex<double>> out;
  for (const auto& g : groups) {
    std::complex<double> mean = 0;
    for (auto z : g) mean += z;
    out.push_back(mean / static_cast<double>(g.size()));
  }
  return out;
}

std::vector<ExactComplex> expand(std::vector<ExactComplex> values, const std::vector<int>& mult) {
  std::vector<std::pair<ExactComplex, int>> pairs;
  for (std::size_t k = 0; k < values.size(); ++k) pairs.emplace_back(values[k], mult[k]);
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  std::vector<ExactComplex> out;
  for (const auto& [v, m] : pairs)
    for (int k = 0; k < m; ++k) out.push_back(v);
  return out;
}

std::string padded(std::size_t k, std::size_t count) {
  std::string s = std::to_string(k), widest = std::to_string(count);
  return std::string(widest.size() - s.size(), '0') + s;
}

struct Centre {
  Graph graph;
  std::vector<Arrow> arrows;
  std::vector<CMatrix> forward, backward;
};

Centre build_centre(const IJRep& rep, const BlockLayout& lay) {
  Centre c;
  for (const auto& n : lay.nodes) c.graph.add_node(n);
  for (std::size_t u = 0; u < lay.nodes.size(); ++u)
    for (std::size_t v = 0; v < lay.nodes.size(); ++v) {
      if (lay.part[u] >= lay.part[v]) continue;
      c.graph.add_edge(lay.nodes[u], lay.nodes[v]);
      c.arrows.push_back({lay.nodes[u], lay.nodes[v]});
      c.forward.push_back(rep.alpha.block(lay.offset[v], lay.offset[u], lay.dim(v), lay.dim(u)).to_numeric());
      c.backward.push_back(rep.alpha.block(lay.offset[u], lay.offset[v], lay.dim(u), lay.dim(v)).to_numeric());
    }
  return c;
}

}  // namespace

std::size_t IJData::part_of(const NodeId& node) const {
  for (std::size_t j = 0; j < parts.size(); ++j)
    if (std::find(parts[j].begin(), parts[j].end(), node) != parts[j].end()) return j;
  throw InvalidInput("node '" + node + "' is not in any part");
}

void IJData::validate() const {
  if (parts.empty()) throw InvalidInput("data needs at least one part");
  if (labels.size() != parts.size()) throw InvalidInput("one label per part required");
  std::set<PartLabel> seen_labels(labels.begin(), labels.end());
  if (seen_labels.size() != labels.size()) throw InvalidInput("duplicate part label");
  std::set<NodeId> seen;
  auto add = [&](const NodeId& n) {
    if (!seen.insert(n).second) throw InvalidInput("node '" + n + "' appears twice");
  };
  for (const auto& p : parts) {
    if (p.empty()) throw InvalidInput("empty part");
    for (const auto& n : p) add(n);
  }
  for (const auto& n : extra) add(n);
}

BlockLayout IJRep::layout() const {
  BlockLayout lay;
  lay.offset.push_back(0);
  lay.part_offset.push_back(0);
  for (std::size_t j = 0; j < data.parts.size(); ++j) {
    for (const auto& n : sorted(data.parts[j])) {
      auto it = dims.find(n);
      if (it == dims.end()) throw InvalidInput("no dimension for node '" + n + "'");
      if (it->second < 0) throw InvalidInput("negative dimension at node '" + n + "'");
      lay.position[n] = lay.nodes.size();
      lay.nodes.push_back(n);
      lay.part.push_back(j);
      lay.offset.push_back(lay.offset.back() + static_cast<std::size_t>(it->second));
    }
    lay.part_offset.push_back(lay.offset.back());
  }
  return lay;
}

ExactMatrix IJRep::alpha_block(std::size_t h, std::size_t j) const {
  const auto lay = layout();
  return alpha.block(lay.part_offset[h], lay.part_offset[j], lay.part_offset[h + 1] - lay.part_offset[h],
                     lay.part_offset[j + 1] - lay.part_offset[j]);
}

void IJRep::validate() const {
  data.validate();
  const auto lay = layout();
  if (dims.size() != lay.nodes.size()) throw InvalidInput("dimensions given for nodes outside the parts");
  const std::size_t n = lay.total();
  if (alpha.rows() != n || alpha.cols() != n) throw InvalidInput("alpha does not match the graded dimension");
  for (std::size_t j = 0; j < data.parts.size(); ++j) {
    const std::size_t w = lay.part_offset[j + 1] - lay.part_offset[j];
    if (!alpha.block(lay.part_offset[j], lay.part_offset[j], w, w).is_zero())
      throw InvalidInput("alpha has a nonzero diagonal block for part '" + data.labels[j] + "'");
  }
  if (residues.size() != data.extra.size()) throw InvalidInput("one residue per extra node required");
  for (const auto& i : data.extra) {
    auto it = residues.find(i);
    if (it == residues.end()) throw InvalidInput("missing residue for '" + i + "'");
    if (it->second.rows() != n || it->second.cols() != n) throw InvalidInput("residue '" + i + "' has the wrong size");
  }
}

void RealizationData::validate(const IJData& data) const {
  for (const auto& l : data.labels)
    if (!a.count(l)) throw InvalidInput("no realization value a for part '" + l + "'");
  for (std::size_t x = 0; x < data.labels.size(); ++x)
    for (std::size_t y = x + 1; y < data.labels.size(); ++y)
      if (a.at(data.labels[x]) == a.at(data.labels[y])) throw InvalidInput("realization values a_j must be distinct");
  auto check_part = [&](const std::vector<NodeId>& part) {
    for (std::size_t x = 0; x < part.size(); ++x) {
      if (!b.count(part[x])) throw InvalidInput("no realization value b for '" + part[x] + "'");
      for (std::size_t y = 0; y < x; ++y)
        if (b.at(part[x]) == b.at(part[y])) throw InvalidInput("realization values b_i must be distinct within a part");
    }
  };
  for (const auto& p : data.parts) check_part(p);
  check_part(data.extra);
}

ConnectionMatrices realize(const IJRep& rep, const RealizationData& rd) {
  rep.validate();
  rd.validate(rep.data);
  const auto lay = rep.layout();
  const std::size_t n = lay.total(), k = rep.data.parts.size();
  ConnectionMatrices cm;
  cm.a0 = ExactMatrix(n, n);
  cm.a1 = ExactMatrix(n, n);
  for (std::size_t u = 0; u < lay.nodes.size(); ++u)
    for (std::size_t r = lay.offset[u]; r < lay.offset[u + 1]; ++r) {
      cm.a0(r, r) = rd.a.at(rep.data.labels[lay.part[u]]);
      cm.a1(r, r) = rd.b.at(lay.nodes[u]);
      cm.basis_owner.push_back(lay.nodes[u]);
    }
  cm.b = cm.a1;
  for (std::size_t h = 0; h < k; ++h)
    for (std::size_t j = 0; j < k; ++j) {
      if (h == j) continue;
      const auto r0 = lay.part_offset[h], c0 = lay.part_offset[j];
      const auto nr = lay.part_offset[h + 1] - r0, nc = lay.part_offset[j + 1] - c0;
      ExactMatrix blk = rep.alpha.block(r0, c0, nr, nc);
      if (h > j)
        blk = -blk;
      else
        blk = blk.scaled(rd.a.at(rep.data.labels[j]) - rd.a.at(rep.data.labels[h]));
      cm.b.set_block(r0, c0, blk);
    }
  for (const auto& i : rep.data.extra) cm.residues.push_back({i, rd.b.at(i), rep.residues.at(i)});
  cm.part_labels = rep.data.labels;
  if (k >= 2)
    cm.minimal_pole_order = 3;
  else
    cm.minimal_pole_order = rep.data.parts[0].size() >= 2 ? 2 : 1;
  return cm;
}

namespace {

std::pair<IJRep, RealizationData> from_diagonal(const ConnectionMatrices& cm) {
  const std::size_t n = cm.a0.rows();
  if (cm.basis_owner.size() != n) throw InvalidInput("layout does not cover the basis");
  IJRep rep;
  RealizationData rd;
  std::vector<ExactComplex> part_value;
  std::vector<std::size_t> part_of_row(n);
  for (std::size_t r = 0; r < n; ++r) {
    const NodeId& owner = cm.basis_owner[r];
    const bool continues = r > 0 && cm.a0(r, r) == cm.a0(r - 1, r - 1);
    if (!continues) {
      for (const auto& v : part_value)
        if (v == cm.a0(r, r)) throw InvalidInput("A0 eigenspaces are not contiguous in the layout");
      part_value.push_back(cm.a0(r, r));
      rep.data.parts.emplace_back();
    }
    part_of_row[r] = part_value.size() - 1;
    auto& part = rep.data.parts.back();
    if (part.empty() || part.back() != owner) {
      if (std::find(part.begin(), part.end(), owner) != part.end() || rep.dims.count(owner))
        throw InvalidInput("basis vectors of node '" + owner + "' are not contiguous");
      if (!part.empty() && owner < part.back()) throw InvalidInput("nodes within a part must be sorted");
      part.push_back(owner);
      rd.b[owner] = cm.a1(r, r);
    } else if (!(rd.b[owner] == cm.a1(r, r))) {
      throw InvalidInput("A1 is not scalar on node '" + owner + "'");
    }
    ++rep.dims[owner];
  }
  if (n == 0) throw InvalidInput("connection on the zero bundle");
  if (cm.part_labels.size() != part_value.size())
    throw InvalidInput("layout names " + std::to_string(cm.part_labels.size()) + " parts but A0 has " +
                       std::to_string(part_value.size()) + " eigenvalues");
  rep.data.labels = cm.part_labels;
  for (std::size_t j = 0; j < part_value.size(); ++j) rd.a[cm.part_labels[j]] = part_value[j];

  rep.alpha = ExactMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const auto h = part_of_row[r], j = part_of_row[c];
      const ExactComplex& x = cm.b(r, c);
      if (h == j) {
        if (!(x == cm.a1(r, c))) throw InvalidInput("B does not agree with A1 on the A0-eigenspaces");
      } else if (h > j) {
        rep.alpha(r, c) = -x;
      } else {
        rep.alpha(r, c) = x / (part_value[j] - part_value[h]);
      }
    }
  for (const auto& res : cm.residues) {
    if (res.matrix.rows() != n || res.matrix.cols() != n) throw InvalidInput("residue '" + res.node + "' has the wrong size");
    rep.data.extra.push_back(res.node);
    rep.residues[res.node] = res.matrix;
    rd.b[res.node] = res.position;
  }
  rep.validate();
  rd.validate(rep.data);
  return {rep, rd};
}

// Distinct exact eigenvalues of a semisimple matrix, sorted.
std::vector<ExactComplex> semisimple_spectrum(const ExactMatrix& m, const char* name) {
  const auto roots = minimal_polynomial_roots(m);
  if (!roots.exact) throw InvalidInput(std::string(name) + " has eigenvalues that are not exact rationals");
  for (std::size_t k = 1; k < roots.roots.size(); ++k)
    if (roots.roots[k] == roots.roots[k - 1]) throw InvalidInput(std::string(name) + " is not semisimple");
  return roots.roots;
}

}  // namespace

std::pair<IJRep, RealizationData> from_connection(const ConnectionMatrices& cm) {
  const std::size_t n = cm.a0.rows();
  if (cm.a0.cols() != n || cm.a1.rows() != n || cm.a1.cols() != n || cm.b.rows() != n || cm.b.cols() != n)
    throw InvalidInput("connection matrices must be square of equal size");
  if (!(cm.a0 * cm.a1 == cm.a1 * cm.a0)) throw InvalidInput("A0 and A1 do not commute");
  if (!cm.basis_owner.empty()) {
    if (!is_diagonal(cm.a0) || !is_diagonal(cm.a1)) throw InvalidInput("layout given but A0, A1 are not diagonal");
    return from_diagonal(cm);
  }

  // Exact simultaneous eigenbasis, parts ordered by A0-eigenvalue and nodes by A1-eigenvalue.
  const auto a_values = semisimple_spectrum(cm.a0, "A0");
  std::vector<ExactMatrix> columns;
  std::vector<NodeId> owner;
  std::vector<PartLabel> labels;
  for (std::size_t j = 0; j < a_values.size(); ++j) {
    const PartLabel label = "J" + padded(j + 1, a_values.size());
    labels.push_back(label);
    const ExactMatrix k = kernel(shifted(cm.a0, a_values[j]));
    const ExactMatrix restricted = solve(k, cm.a1 * k);
    const auto b_values = semisimple_spectrum(restricted, "A1");
    for (std::size_t i = 0; i < b_values.size(); ++i) {
      const ExactMatrix vecs = k * kernel(shifted(restricted, b_values[i]));
      const NodeId node = label + "." + padded(i + 1, b_values.size());
      for (std::size_t c = 0; c < vecs.cols(); ++c) {
        columns.push_back(vecs.block(0, c, n, 1));
        owner.push_back(node);
      }
    }
  }
  ExactMatrix s(n, n);
  for (std::size_t c = 0; c < n; ++c) s.set_block(0, c, columns[c]);
  const ExactMatrix s_inv = inverse(s);
  ConnectionMatrices diag = cm;
  diag.a0 = s_inv * cm.a0 * s;
  diag.a1 = s_inv * cm.a1 * s;
  diag.b = s_inv * cm.b * s;
  for (auto& r : diag.residues) r.matrix = s_inv * r.matrix * s;
  diag.part_labels = labels;
  diag.basis_owner = owner;
  return from_diagonal(diag);
}

bool is_proper_twist(const IJRep& rep, const Twist& twist) {
  for (const auto& i : rep.data.extra) {
    auto it = twist.find(i);
    if (it == twist.end()) return false;
    const auto& b = rep.residues.at(i);
    if (rank(shifted(b, it->second)) == b.rows()) return false;
  }
  return true;
}

IJRep complete(const IJRep& rep, const Twist& twist, const PartLabel& label) {
  rep.validate();
  if (rep.data.is_complete()) return rep;
  if (std::find(rep.data.labels.begin(), rep.data.labels.end(), label) != rep.data.labels.end())
    throw InvalidInput("part label '" + label + "' already in use");
  const std::size_t n = rep.alpha.rows();
  std::map<NodeId, ColumnSpace> spaces;
  std::size_t w0 = 0;
  for (const auto& i : rep.data.extra) {
    auto it = twist.find(i);
    if (it == twist.end()) throw InvalidInput("no twist given for '" + i + "'");
    spaces[i] = column_space(shifted(rep.residues.at(i), it->second));
    w0 += spaces[i].basis.cols();
  }
  IJRep out;
  out.data.labels.push_back(label);
  out.data.labels.insert(out.data.labels.end(), rep.data.labels.begin(), rep.data.labels.end());
  out.data.parts.push_back(rep.data.extra);
  out.data.parts.insert(out.data.parts.end(), rep.data.parts.begin(), rep.data.parts.end());
  out.dims = rep.dims;
  out.alpha = ExactMatrix(w0 + n, w0 + n);
  out.alpha.set_block(w0, w0, rep.alpha);
  std::size_t off = 0;
  for (const auto& i : sorted(rep.data.extra)) {  // W_0 in canonical node order
    const auto& cs = spaces.at(i);
    const std::size_t d = cs.basis.cols();
    out.dims[i] = static_cast<int>(d);
    out.alpha.set_block(off, w0, cs.coords);  // p_i
    out.alpha.set_block(w0, off, cs.basis);   // q_i
    off += d;
  }
  out.validate();
  return out;
}

IJRep cycle(const IJRep& rep) {
  rep.validate();
  require_complete(rep, "cycling");
  if (rep.data.parts.size() == 1) return rep;
  const auto lay = rep.layout();
  const std::size_t n = lay.total(), w0 = lay.part_offset[1];
  IJRep out = rep;
  std::rotate(out.data.labels.begin(), out.data.labels.begin() + 1, out.data.labels.end());
  std::rotate(out.data.parts.begin(), out.data.parts.begin() + 1, out.data.parts.end());
  std::vector<std::size_t> perm;  // new basis index -> old
  for (std::size_t r = w0; r < n; ++r) perm.push_back(r);
  for (std::size_t r = 0; r < w0; ++r) perm.push_back(r);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      ExactComplex x = rep.alpha(perm[r], perm[c]);
      if (perm[c] < w0 && perm[r] >= w0) x = -x;
      out.alpha(r, c) = x;
    }
  return out;
}

IJRep incomplete(const IJRep& rep, const Twist& twist) {
  rep.validate();
  require_complete(rep, "passing to incomplete data");
  if (rep.data.parts.size() < 2) throw InvalidInput("cannot remove the only part");
  const auto lay = rep.layout();
  const std::size_t n = lay.total(), w0 = lay.part_offset[1];
  IJRep out;
  out.data.labels.assign(rep.data.labels.begin() + 1, rep.data.labels.end());
  out.data.parts.assign(rep.data.parts.begin() + 1, rep.data.parts.end());
  out.data.extra = rep.data.parts[0];
  out.dims = rep.dims;
  out.alpha = rep.alpha.block(w0, w0, n - w0, n - w0);
  for (std::size_t u = 0; u < lay.nodes.size() && lay.part[u] == 0; ++u) {
    const NodeId& i = lay.nodes[u];
    auto it = twist.find(i);
    if (it == twist.end()) throw InvalidInput("no twist given for '" + i + "'");
    const std::size_t d = lay.dim(u);
    const ExactMatrix q = rep.alpha.block(w0, lay.offset[u], n - w0, d);
    const ExactMatrix p = rep.alpha.block(lay.offset[u], w0, d, n - w0);
    out.residues[i] = shifted(q * p, -it->second);
    out.dims.erase(i);
  }
  out.validate();
  return out;
}

ExactMatrix check_B(const IJRep& rep, const NodeId& node) {
  rep.validate();
  require_complete(rep, "check_B");
  const auto lay = rep.layout();
  auto it = lay.position.find(node);
  if (it == lay.position.end()) throw InvalidInput("unknown node '" + node + "'");
  const std::size_t u = it->second, j = lay.part[u], d = lay.dim(u);
  const ExactMatrix p = rows_of(rep.alpha, lay.offset[u], d);  // V -> V_i
  const ExactMatrix q = cols_of(rep.alpha, lay.offset[u], d);  // V_i -> V
  ExactMatrix out(d, d);
  for (std::size_t h = 0; h < rep.data.parts.size(); ++h) {
    if (h == j) continue;
    const std::size_t c0 = lay.part_offset[h], w = lay.part_offset[h + 1] - c0;
    const ExactMatrix term = p.block(0, c0, d, w) * q.block(c0, 0, w, d);
    if (h > j)
      out += term;
    else
      out -= term;
  }
  return out;
}

RootList minimal_polynomial_roots(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("minimal polynomial of a non-square matrix");
  RootList out;
  if (m.rows() == 0) {
    out.exact = true;
    return out;
  }
  const CMatrix numeric = m.to_numeric();
  const Eigen::ComplexEigenSolver<CMatrix> solver(numeric, false);
  const Eigen::VectorXcd ev = solver.eigenvalues();
  const double scale = std::max(1.0, singular_value_range(numeric).second);

  // Clusters of a defective eigenvalue spread like eps^(1/k); try widening radii.
  for (double radius : {1e-10, 1e-7, 1e-4, 1e-2}) {
    std::vector<ExactComplex> candidates;
    bool ok = true;
    for (auto z : cluster(ev, radius * scale)) {
      const Rational re = rational_approximation(z.real(), 1000000), im = rational_approximation(z.imag(), 1000000);
      const ExactComplex x(re, im);
      if (std::abs(x.to_complex() - z) > 1e-6 * scale) {
        ok = false;
        break;
      }
      if (std::none_of(candidates.begin(), candidates.end(), [&](const ExactComplex& c) { return c == x; }))
        candidates.push_back(x);
    }
    if (!ok) continue;
    const auto mult = exact_multiplicities(m, candidates);
    if (mult.empty()) continue;
    out.roots = expand(candidates, mult);
    out.exact = true;
    return out;
  }
  std::vector<ExactComplex> values;
  for (auto z : cluster(ev, 1e-7 * scale)) values.push_back(ExactComplex::from_double(z));
  out.roots = expand(values, numeric_multiplicities(numeric, values));
  return out;
}

IJRep random_ijrep(const IJData& data, const std::map<NodeId, int>& dims, std::uint64_t seed, int spread) {
  IJRep rep;
  rep.data = data;
  for (const auto& p : data.parts)
    for (const auto& n : p) {
      auto it = dims.find(n);
      if (it == dims.end()) throw InvalidInput("no dimension for node '" + n + "'");
      rep.dims[n] = it->second;
    }
  const auto lay = rep.layout();
  const std::size_t n = lay.total();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-spread, spread);
  auto entry = [&] {
    Rational re(pick(rng), 4), im(pick(rng), 4);
    re.canonicalize();
    im.canonicalize();
    return ExactComplex(re, im);
  };
  rep.alpha = ExactMatrix(n, n);
  std::vector<std::size_t> part_of_row(n);
  for (std::size_t u = 0; u < lay.nodes.size(); ++u)
    for (std::size_t r = lay.offset[u]; r < lay.offset[u + 1]; ++r) part_of_row[r] = lay.part[u];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (part_of_row[r] != part_of_row[c]) rep.alpha(r, c) = entry();
  for (const auto& i : data.extra) {
    ExactMatrix b(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) b(r, c) = entry();
    rep.residues[i] = b;
  }
  rep.validate();
  return rep;
}

QuiverRep central_rep(const IJRep& rep) {
  rep.validate();
  require_complete(rep, "the central quiver");
  const auto lay = rep.layout();
  Centre c = build_centre(rep, lay);
  QuiverRep out{Quiver(std::move(c.graph), std::move(c.arrows)), DimVector(lay.nodes.size()), std::move(c.forward),
                std::move(c.backward)};
  for (std::size_t u = 0; u < lay.nodes.size(); ++u)
    out.dims[out.quiver.graph().index_of(lay.nodes[u])] = static_cast<std::int64_t>(lay.dim(u));
  out.validate();
  return out;
}

QuiverPoint to_quiver_point(const IJRep& rep, const RootOrderings& orderings) {
  rep.validate();
  require_complete(rep, "the quiver point");
  const auto lay = rep.layout();
  Centre c = build_centre(rep, lay);
  QuiverPoint pt;
  std::map<NodeId, std::int64_t> dims;
  std::map<NodeId, ExactComplex> lambda;
  for (std::size_t u = 0; u < lay.nodes.size(); ++u) {
    const NodeId& i = lay.nodes[u];
    dims[i] = static_cast<std::int64_t>(lay.dim(u));
    const ExactMatrix b = check_B(rep, i);
    auto given = orderings.find(i);
    std::vector<ExactComplex> roots = given != orderings.end() ? given->second : minimal_polynomial_roots(b).roots;
    pt.roots[i] = roots;
    if (roots.empty()) {
      lambda[i] = ExactComplex(0);
      continue;
    }
    const Leg leg = leg_from_matrix(b.to_numeric(), roots);
    pt.leg_residual = std::max(pt.leg_residual, leg.annihilation_residual);
    lambda[i] = leg.params[0];
    NodeId previous = i;
    for (std::size_t k = 1; k < leg.dims.size(); ++k) {
      const NodeId name = i + "." + std::to_string(k);
      c.graph.add_node(name);
      c.graph.add_edge(name, previous);
      c.arrows.push_back({name, previous});
      c.forward.push_back(leg.q[k - 1]);
      c.backward.push_back(leg.p[k - 1]);
      dims[name] = leg.dims[k];
      lambda[name] = leg.params[k];
      pt.legs[i].push_back(name);
      previous = name;
    }
  }
  pt.quiver = Quiver(std::move(c.graph), std::move(c.arrows));
  const auto& nodes = pt.quiver.graph().nodes();
  pt.dims = DimVector(nodes.size());
  pt.lambda = ParamVector(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    pt.dims[k] = dims.at(nodes[k]);
    pt.lambda[k] = lambda.at(nodes[k]);
  }
  pt.rep = QuiverRep{pt.quiver, pt.dims, std::move(c.forward), std::move(c.backward)};
  pt.rep.validate();
  return pt;
}

std::vector<ReadingReport> enumerate_readings(const IJData& data, const std::map<NodeId, int>& dims) {
  data.validate();
  if (!data.is_complete()) throw InvalidInput("readings need complete data");
  const std::size_t k = data.parts.size();
  std::vector<std::int64_t> part_dim(k, 0);
  for (std::size_t j = 0; j < k; ++j)
    for (const auto& n : data.parts[j]) {
      auto it = dims.find(n);
      if (it == dims.end()) throw InvalidInput("no dimension for node '" + n + "'");
      part_dim[j] += it->second;
    }
  // Order at infinity of a single pole carrying the given parts.
  auto order_at_infinity = [&](std::size_t parts, std::size_t nodes_in_single_part) {
    if (parts >= 2) return 3;
    return nodes_in_single_part >= 2 ? 2 : 1;
  };
  std::vector<ReadingReport> out;
  ReadingReport principal;
  for (auto d : part_dim) principal.bundle_rank += d;
  principal.pole_orders = {order_at_infinity(k, data.parts[0].size())};
  for (const auto& p : data.parts)
    for (const auto& n : p) principal.roles[n] = "centre";
  out.push_back(principal);
  if (k == 1) return out;
  for (std::size_t r = 0; r < k; ++r) {
    ReadingReport rep;
    rep.removed_part = data.labels[r];
    const std::size_t other = r == 0 ? 1 : 0;
    for (std::size_t j = 0; j < k; ++j)
      if (j != r) rep.bundle_rank += part_dim[j];
    rep.simple_pole_count = static_cast<int>(data.parts[r].size());
    rep.pole_orders = {order_at_infinity(k - 1, data.parts[other].size())};
    rep.pole_orders.insert(rep.pole_orders.end(), data.parts[r].size(), 1);
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& n : data.parts[j]) rep.roles[n] = j == r ? "simple pole" : "centre";
    out.push_back(rep);
  }
  return out;
}

IJStability is_stable_ijrep(const IJRep& rep, int trials, std::uint64_t seed) {
  rep.validate();
  Twist zero;
  for (const auto& i : rep.data.extra) zero[i] = ExactComplex(0);
  PartLabel label = "0";
  while (std::find(rep.data.labels.begin(), rep.data.labels.end(), label) != rep.data.labels.end()) label += "'";
  const IJRep full = rep.data.is_complete() ? rep : complete(rep, zero, label);
  IJStability out;
  out.stable = is_stable(central_rep(full), trials, seed);
  if (!out.stable) return out;
  const auto lay = full.layout();
  const CMatrix alpha = full.alpha.to_numeric();
  for (std::size_t u = 0; u < lay.nodes.size(); ++u) {
    const auto d = static_cast<Eigen::Index>(lay.dim(u));
    if (d == 0) continue;
    const auto off = static_cast<Eigen::Index>(lay.offset[u]);
    if (numerical_rank(alpha.middleRows(off, d)) != static_cast<std::size_t>(d))
      out.inconsistencies.push_back("p_" + lay.nodes[u] + " is not surjective in a stable representation");
    if (numerical_rank(alpha.middleCols(off, d)) != static_cast<std::size_t>(d))
      out.inconsistencies.push_back("q_" + lay.nodes[u] + " is not injective in a stable representation");
  }
  return out;
}

}  // namespace qc
