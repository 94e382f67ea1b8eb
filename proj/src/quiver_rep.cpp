#include "quiverconn/quiver_rep.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

constexpr double kMomentTolerance = 1e-8;

Eigen::Index as_index(std::int64_t n) { return static_cast<Eigen::Index>(n); }

std::vector<Eigen::Index> offsets_of(const DimVector& dims) {
  std::vector<Eigen::Index> off(dims.size() + 1, 0);
  for (std::size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + as_index(dims[i]);
  return off;
}

// Arrow maps of the doubled quiver embedded in End(V), V = ⊕ V_i.
std::vector<CMatrix> embedded_generators(const QuiverRep& rep) {
  const auto& g = rep.quiver.graph();
  const auto off = offsets_of(rep.dims);
  const Eigen::Index n = off.back();
  std::vector<CMatrix> gens;
  for (std::size_t a = 0; a < rep.quiver.arrows().size(); ++a) {
    const auto& arrow = rep.quiver.arrows()[a];
    const auto t = g.index_of(arrow.tail), h = g.index_of(arrow.head);
    CMatrix f = CMatrix::Zero(n, n), b = CMatrix::Zero(n, n);
    f.block(off[h], off[t], rep.forward[a].rows(), rep.forward[a].cols()) = rep.forward[a];
    b.block(off[t], off[h], rep.backward[a].rows(), rep.backward[a].cols()) = rep.backward[a];
    gens.push_back(std::move(f));
    gens.push_back(std::move(b));
  }
  return gens;
}

// Orthonormal-basis extension by two passes of Gram-Schmidt.
bool extend(std::vector<CVector>& basis, CVector v, double floor) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v -= b * b.dot(v);
  const double norm = v.norm();
  if (!(norm > floor)) return false;
  basis.push_back(v / norm);
  return true;
}

CVector flatten(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix unflatten(const CVector& v, Eigen::Index n) { return Eigen::Map<const CMatrix>(v.data(), n, n); }

double generator_floor(const std::vector<CMatrix>& gens) {
  double scale = 0;
  for (const auto& g : gens) scale = std::max(scale, g.norm());
  return kRankTolerance * scale;
}

// Dimension of the smallest subspace containing v that is invariant under gens.
std::size_t closure_dimension(const std::vector<CMatrix>& gens, const CVector& v, double floor) {
  std::vector<CVector> basis;
  if (!extend(basis, v, 0.0)) return 0;
  const auto target = static_cast<std::size_t>(v.size());
  for (std::size_t k = 0; k < basis.size() && basis.size() < target; ++k)
    for (const auto& g : gens) {
      CVector w = g * basis[k];
      extend(basis, std::move(w), floor);
      if (basis.size() == target) break;
    }
  return basis.size();
}

// Dimension of the algebra generated by the node idempotents and gens.
std::size_t algebra_dimension(const std::vector<CMatrix>& gens, const DimVector& dims) {
  const auto off = offsets_of(dims);
  const Eigen::Index n = off.back();
  const auto target = static_cast<std::size_t>(n * n);
  const double floor = generator_floor(gens);
  std::vector<CVector> basis;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] == 0) continue;
    CMatrix e = CMatrix::Zero(n, n);
    e.block(off[i], off[i], as_index(dims[i]), as_index(dims[i])).setIdentity();
    extend(basis, flatten(e), 0.0);
  }
  for (std::size_t k = 0; k < basis.size() && basis.size() < target; ++k) {
    const CMatrix b = unflatten(basis[k], n);
    for (const auto& g : gens) {
      extend(basis, flatten(g * b), floor);
      if (basis.size() == target) break;
    }
  }
  return basis.size();
}

}  // namespace

void QuiverRep::validate() const {
  const auto& g = quiver.graph();
  if (dims.size() != g.size()) throw InvalidInput("dimension vector does not match the quiver");
  if (!dims.is_nonnegative()) throw InvalidInput("negative dimension");
  const auto& arrows = quiver.arrows();
  if (forward.size() != arrows.size() || backward.size() != arrows.size())
    throw InvalidInput("representation must carry two maps per arrow");
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto t = as_index(dims[g.index_of(arrows[a].tail)]);
    const auto h = as_index(dims[g.index_of(arrows[a].head)]);
    if (forward[a].rows() != h || forward[a].cols() != t || backward[a].rows() != t || backward[a].cols() != h)
      throw InvalidInput("map shape inconsistent on arrow " + arrows[a].tail + "->" + arrows[a].head);
  }
}

QuiverRep QuiverRep::zero(const Quiver& q, const DimVector& dims) {
  QuiverRep rep{q, dims, {}, {}};
  const auto& g = q.graph();
  if (dims.size() != g.size()) throw InvalidInput("dimension vector does not match the quiver");
  if (!dims.is_nonnegative()) throw InvalidInput("negative dimension");
  for (const auto& a : q.arrows()) {
    const auto t = as_index(dims[g.index_of(a.tail)]), h = as_index(dims[g.index_of(a.head)]);
    rep.forward.push_back(CMatrix::Zero(h, t));
    rep.backward.push_back(CMatrix::Zero(t, h));
  }
  rep.validate();
  return rep;
}

std::complex<double> MomentValue::trace_sum() const {
  std::complex<double> s = 0;
  for (const auto& b : blocks) s += b.trace();
  return s;
}

MomentValue moment_map(const QuiverRep& rep) {
  rep.validate();
  const auto& g = rep.quiver.graph();
  MomentValue mu;
  for (std::size_t i = 0; i < g.size(); ++i) mu.blocks.push_back(CMatrix::Zero(as_index(rep.dims[i]), as_index(rep.dims[i])));
  for (std::size_t a = 0; a < rep.quiver.arrows().size(); ++a) {
    const auto& arrow = rep.quiver.arrows()[a];
    mu.blocks[g.index_of(arrow.head)] += rep.forward[a] * rep.backward[a];
    mu.blocks[g.index_of(arrow.tail)] -= rep.backward[a] * rep.forward[a];
  }
  return mu;
}

double moment_residual(const QuiverRep& rep, const ParamVector& lambda) {
  if (lambda.size() != rep.dims.size()) throw InvalidInput("parameter vector does not match the quiver");
  const auto mu = moment_map(rep);
  double worst = 0;
  for (std::size_t i = 0; i < mu.blocks.size(); ++i) {
    CMatrix diff = mu.blocks[i];
    diff.diagonal().array() -= lambda[i].to_complex();
    worst = std::max(worst, max_abs(diff));
  }
  return worst;
}

double moment_scale(const QuiverRep& rep) {
  double s = 1;
  for (std::size_t a = 0; a < rep.forward.size(); ++a) s = std::max(s, rep.forward[a].norm() * rep.backward[a].norm());
  return s;
}

void OrbitSpec::validate() const {
  if (size < 0) throw InvalidInput("orbit size must be nonnegative");
  if (roots.empty()) throw InvalidInput("orbit needs at least one root");
  if (ranks.size() + 1 != roots.size()) throw InvalidInput("orbit needs exactly one rank per root after the first");
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = a + 1; b < roots.size(); ++b)
      if (roots[a] == roots[b]) throw InvalidInput("orbit roots must be distinct");
  int previous = size;
  for (int r : ranks) {
    if (r < 1) throw InvalidInput("orbit ranks must be positive");
    if (r > previous) throw InvalidInput("orbit ranks must be weakly decreasing and bounded by the size");
    previous = r;
  }
}

std::vector<int> OrbitSpec::leg_dims() const {
  std::vector<int> out{size};
  out.insert(out.end(), ranks.begin(), ranks.end());
  return out;
}

std::vector<ExactComplex> OrbitSpec::leg_params() const {
  std::vector<ExactComplex> out{-roots.front()};
  for (std::size_t j = 0; j + 1 < roots.size(); ++j) out.push_back(roots[j] - roots[j + 1]);
  return out;
}

std::vector<ExactComplex> OrbitSpec::resonances() const {
  std::vector<ExactComplex> out;
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = 0; b < roots.size(); ++b)
      if (a != b && (roots[a] - roots[b]).is_nonzero_integer()) out.push_back(roots[a] - roots[b]);
  return out;
}

QuiverRep Leg::as_rep(std::vector<NodeId> names) const {
  const std::size_t l = p.size();
  if (names.empty())
    for (std::size_t j = 0; j <= l; ++j) names.push_back(std::to_string(j));
  if (names.size() != l + 1) throw InvalidInput("leg needs one name per node");
  Graph g;
  g.add_node(names[0], true);
  std::vector<Arrow> arrows;
  for (std::size_t j = 1; j <= l; ++j) {
    g.add_node(names[j]);
    g.add_edge(names[j], names[j - 1]);
    arrows.push_back({names[j], names[j - 1]});
  }
  QuiverRep rep{Quiver(std::move(g), std::move(arrows)), DimVector(l + 1), {}, {}};
  for (std::size_t j = 0; j <= l; ++j) rep.dims[rep.quiver.graph().index_of(names[j])] = dims[j];
  for (std::size_t j = 0; j < l; ++j) {
    rep.forward.push_back(q[j]);
    rep.backward.push_back(p[j]);
  }
  rep.validate();
  return rep;
}

Leg leg_from_matrix(const CMatrix& a, const std::vector<ExactComplex>& roots) {
  if (a.rows() != a.cols()) throw InvalidInput("leg matrix must be square");
  if (roots.empty()) throw InvalidInput("leg needs at least one root");
  const Eigen::Index n = a.rows();
  Leg leg;
  leg.dims.push_back(static_cast<int>(n));
  leg.params.push_back(-roots.front());
  for (std::size_t j = 0; j + 1 < roots.size(); ++j) leg.params.push_back(roots[j] - roots[j + 1]);

  const CMatrix id = CMatrix::Identity(n, n);
  const double anorm = singular_value_range(a).second;
  CMatrix u = id;  // orthonormal basis of V_{j-1}
  for (std::size_t j = 0; j + 1 < roots.size(); ++j) {
    const CMatrix image = (a - roots[j].to_complex() * id) * u;
    const CMatrix next = column_space_basis(image);
    leg.p.push_back(next.adjoint() * image);
    leg.q.push_back(u.adjoint() * next);
    leg.dims.push_back(static_cast<int>(next.cols()));
    u = next;
  }
  CMatrix product = id;
  double bound = 1;
  for (const auto& x : roots) {
    product = (a - x.to_complex() * id) * product;
    bound *= std::max(1.0, anorm + std::abs(x.to_complex()));
  }
  leg.annihilation_residual = max_abs(product);
  if (leg.annihilation_residual > kMomentTolerance * bound)
    throw InvalidInput("roots do not annihilate the matrix (residual " + std::to_string(leg.annihilation_residual) + ")");
  if (roots.size() > 1) {
    CMatrix rebuilt = leg.q[0] * leg.p[0];
    rebuilt.diagonal().array() += roots[0].to_complex();
    leg.reconstruction_residual = max_abs(rebuilt - a);
  } else {
    leg.reconstruction_residual = max_abs(a - roots[0].to_complex() * id);
  }
  return leg;
}

ReflectedRep reflection_functor(const QuiverRep& rep, const ParamVector& lambda, std::size_t node) {
  rep.validate();
  const auto& g = rep.quiver.graph();
  if (node >= g.size()) throw InvalidInput("reflection at unknown node");
  if (lambda.size() != g.size()) throw InvalidInput("parameter vector does not match the quiver");
  if (lambda[node].is_zero())
    throw ReflectionUndefined("reflection functor undefined at '" + g.nodes()[node] + "': parameter is zero");
  const double scale = moment_scale(rep);
  const double before = moment_residual(rep, lambda);
  if (before > kMomentTolerance * scale)
    throw InvalidInput("representation is not in the moment-map fibre (residual " + std::to_string(before) + ")");

  const NodeId& here = g.nodes()[node];
  const auto& arrows = rep.quiver.arrows();
  const Eigen::Index n = as_index(rep.dims[node]);
  struct Slot {
    std::size_t arrow;
    bool head;  // node is the head of the arrow
    Eigen::Index offset;
    Eigen::Index size;
  };
  std::vector<Slot> slots;
  Eigen::Index m = 0;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    if (arrows[a].head != here && arrows[a].tail != here) continue;
    const bool head = arrows[a].head == here;
    const auto other = g.index_of(head ? arrows[a].tail : arrows[a].head);
    slots.push_back({a, head, m, as_index(rep.dims[other])});
    m += slots.back().size;
  }
  CMatrix in(n, m), out(m, n);  // in·out = μ_i
  for (const auto& s : slots) {
    if (s.head) {
      in.middleCols(s.offset, s.size) = rep.forward[s.arrow];
      out.middleRows(s.offset, s.size) = rep.backward[s.arrow];
    } else {
      in.middleCols(s.offset, s.size) = -rep.backward[s.arrow];
      out.middleRows(s.offset, s.size) = rep.forward[s.arrow];
    }
  }
  const std::complex<double> li = lambda[node].to_complex();
  const CMatrix k = kernel_basis(in);
  const CMatrix proj = CMatrix::Identity(m, m) - out * in / li;
  const CMatrix new_out = k;
  const CMatrix new_in = -li * k.adjoint() * proj;
  const Eigen::Index n2 = k.cols();

  ReflectedRep result{rep, RootSystem(g).dual_reflect(node, lambda)};
  result.rep.dims[node] = n2;
  for (const auto& s : slots) {
    if (s.head) {
      result.rep.forward[s.arrow] = new_in.middleCols(s.offset, s.size);
      result.rep.backward[s.arrow] = new_out.middleRows(s.offset, s.size);
    } else {
      result.rep.forward[s.arrow] = new_out.middleRows(s.offset, s.size);
      result.rep.backward[s.arrow] = -new_in.middleCols(s.offset, s.size);
    }
  }
  result.rep.validate();
  return result;
}

bool is_stable(const QuiverRep& rep, int trials, std::uint64_t seed) {
  rep.validate();
  const auto total = rep.total_dim();
  if (total == 0) return false;
  const auto gens = embedded_generators(rep);
  const double floor = generator_floor(gens);

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < rep.dims.size(); ++i)
    if (rep.dims[i] > 0) support.push_back(i);
  std::vector<CMatrix> adjoints;
  for (const auto& g : gens) adjoints.push_back(g.adjoint());

  // Pre-filter: a proper closure is a certificate of instability.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const auto off = offsets_of(rep.dims);
  for (int t = 0; t < trials; ++t) {
    const auto i = support[static_cast<std::size_t>(t) % support.size()];
    CVector v = CVector::Zero(as_index(total));
    for (Eigen::Index r = off[i]; r < off[i + 1]; ++r) v(r) = {normal(rng), normal(rng)};
    if (closure_dimension(gens, v, floor) < static_cast<std::size_t>(total)) return false;
    if (closure_dimension(adjoints, v, floor) < static_cast<std::size_t>(total)) return false;
  }
  return algebra_dimension(gens, rep.dims) == static_cast<std::size_t>(total * total);
}

QuiverRep random_rep(const Quiver& q, const DimVector& dims, std::uint64_t seed) {
  QuiverRep rep = QuiverRep::zero(q, dims);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  auto fill = [&](CMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double re = normal(rng);
        m(r, c) = {re, normal(rng)};
      }
  };
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    fill(rep.forward[a]);
    fill(rep.backward[a]);
  }
  return rep;
}

std::vector<std::complex<double>> trace_invariants(const QuiverRep& rep, int max_length, std::uint64_t seed,
                                                   int samples) {
  rep.validate();
  std::vector<std::complex<double>> out;
  for (std::size_t a = 0; a < rep.forward.size(); ++a) out.push_back((rep.backward[a] * rep.forward[a]).trace());

  const auto gens = embedded_generators(rep);
  const auto off = offsets_of(rep.dims);
  const Eigen::Index n = off.back();
  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(s));
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix m = CMatrix::Zero(n, n);
    for (const auto& g : gens) {
      const double re = normal(rng);
      m += std::complex<double>(re, normal(rng)) * g;
    }
    CMatrix power = m;
    for (int len = 1; len <= max_length; ++len) {
      for (std::size_t i = 0; i < rep.dims.size(); ++i)
        out.push_back(power.block(off[i], off[i], off[i + 1] - off[i], off[i + 1] - off[i]).trace());
      power = power * m;
    }
  }
  return out;
}

}  // namespace qc
