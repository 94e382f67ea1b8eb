#include "quiverconn/root_system.hpp"

#include <algorithm>
#include <sstream>

#include "quiverconn/errors.hpp"

namespace qc {

DimVector DimVector::unit(std::size_t n, std::size_t i) {
  DimVector v(n);
  v[i] = 1;
  return v;
}

bool DimVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](auto x) { return x == 0; });
}

bool DimVector::is_nonnegative() const {
  return std::all_of(c_.begin(), c_.end(), [](auto x) { return x >= 0; });
}

bool DimVector::is_nonpositive() const {
  return std::all_of(c_.begin(), c_.end(), [](auto x) { return x <= 0; });
}

std::int64_t DimVector::height() const {
  std::int64_t h = 0;
  for (auto x : c_) h += x;
  return h;
}

bool DimVector::fits_in(const DimVector& bound) const {
  if (bound.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (c_[i] > bound[i]) return false;
  return true;
}

DimVector DimVector::operator-() const {
  DimVector out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

DimVector& DimVector::operator+=(const DimVector& o) {
  if (o.size() != size()) throw InvalidInput("dimension vector size mismatch");
  for (std::size_t i = 0; i < size(); ++i) c_[i] += o[i];
  return *this;
}

DimVector& DimVector::operator-=(const DimVector& o) {
  if (o.size() != size()) throw InvalidInput("dimension vector size mismatch");
  for (std::size_t i = 0; i < size(); ++i) c_[i] -= o[i];
  return *this;
}

std::string DimVector::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < c_.size(); ++i) out << (i ? "," : "") << c_[i];
  out << ")";
  return out.str();
}

ParamVector ParamVector::from_lattice(const DimVector& v) {
  ParamVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ExactComplex(Rational(static_cast<long>(v[i])));
  return out;
}

std::string ParamVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) out += (i ? "," : "") + c_[i].to_string();
  return out + ")";
}

ExactComplex pairing(const DimVector& v, const ParamVector& lambda) {
  if (v.size() != lambda.size()) throw InvalidInput("pairing of vectors with different index sets");
  ExactComplex total;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) total += ExactComplex(Rational(static_cast<long>(v[i]))) * lambda[i];
  return total;
}

std::string to_string(RootKind kind) {
  switch (kind) {
    case RootKind::NotARoot: return "not-a-root";
    case RootKind::RealPositive: return "real-positive";
    case RootKind::RealNegative: return "real-negative";
    case RootKind::ImaginaryPositive: return "imaginary-positive";
    case RootKind::ImaginaryNegative: return "imaginary-negative";
  }
  return "unknown";
}

IntMatrix cartan_matrix(const Graph& g) {
  const auto adjacency = g.adjacency();
  IntMatrix c(adjacency.size(), std::vector<std::int64_t>(adjacency.size(), 0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) c[i][j] = (i == j ? 2 : 0) - adjacency[i][j];
  return c;
}

RootSystem::RootSystem(const Graph& g) : graph_(g), cartan_(cartan_matrix(g)) {}

void RootSystem::check(const DimVector& v) const {
  if (v.size() != rank()) throw InvalidInput("vector is not indexed by the graph's nodes");
}

void RootSystem::check(const ParamVector& v) const {
  if (v.size() != rank()) throw InvalidInput("parameters are not indexed by the graph's nodes");
}

void RootSystem::check(std::size_t i) const {
  if (i >= rank()) throw InvalidInput("node index out of range");
}

DimVector RootSystem::simple_root(std::size_t i) const {
  check(i);
  return DimVector::unit(rank(), i);
}

std::int64_t RootSystem::form(const DimVector& beta, const DimVector& gamma) const {
  check(beta);
  check(gamma);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (beta[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) total += beta[i] * cartan_[i][j] * gamma[j];
  }
  return total;
}

std::int64_t RootSystem::form_with_simple(std::size_t i, const DimVector& beta) const {
  check(i);
  check(beta);
  std::int64_t total = 0;
  for (std::size_t j = 0; j < rank(); ++j) total += cartan_[i][j] * beta[j];
  return total;
}

std::int64_t RootSystem::delta(const DimVector& v) const { return 2 - form(v, v); }

DimVector RootSystem::reflect(std::size_t i, DimVector beta) const {
  beta[i] -= form_with_simple(i, beta);
  return beta;
}

ParamVector RootSystem::dual_reflect(std::size_t i, ParamVector lambda) const {
  check(i);
  check(lambda);
  const ExactComplex li = lambda[i];
  if (li.is_zero()) return lambda;
  for (std::size_t j = 0; j < rank(); ++j)
    if (cartan_[i][j] != 0) lambda[j] -= li * ExactComplex(Rational(static_cast<long>(cartan_[i][j])));
  return lambda;
}

DimVector RootSystem::apply_word(const WeylWord& word, DimVector beta) const {
  for (auto it = word.rbegin(); it != word.rend(); ++it) beta = reflect(*it, std::move(beta));
  return beta;
}

WeylAction RootSystem::apply_word(const WeylWord& word, DimVector beta, ParamVector lambda) const {
  check(beta);
  check(lambda);
  WeylAction out;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    check(*it);
    if (lambda[*it].is_zero()) out.zero_parameter_steps.push_back(*it);
    beta = reflect(*it, std::move(beta));
    lambda = dual_reflect(*it, std::move(lambda));
  }
  out.beta = std::move(beta);
  out.lambda = std::move(lambda);
  return out;
}

WeylWord RootSystem::parse_word(const std::string& text) const {
  std::istringstream in(text);
  WeylWord word;
  for (std::string token; in >> token;) word.push_back(index_of(token));
  return word;
}

bool RootSystem::has_connected_support(const DimVector& beta) const {
  check(beta);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < rank(); ++i)
    if (beta[i] != 0) support.push_back(i);
  if (support.empty()) return false;
  std::vector<bool> seen(rank(), false);
  std::vector<std::size_t> stack{support.front()};
  seen[support.front()] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    ++reached;
    for (std::size_t j = 0; j < rank(); ++j)
      if (!seen[j] && beta[j] != 0 && cartan_[i][j] < 0) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  return reached == support.size();
}

bool RootSystem::in_fundamental_region(const DimVector& beta) const {
  check(beta);
  if (beta.is_zero() || !beta.is_nonnegative()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (form_with_simple(i, beta) > 0) return false;
  return has_connected_support(beta);
}

RootClass RootSystem::classify(const DimVector& beta) const {
  check(beta);
  RootClass out;
  if (beta.is_zero()) return out;
  const bool negative = beta.is_nonpositive();
  if (!negative && !beta.is_nonnegative()) return out;

  DimVector v = negative ? -beta : beta;
  WeylWord applied;
  while (true) {
    if (v.height() == 1) {
      out.kind = negative ? RootKind::RealNegative : RootKind::RealPositive;
      break;
    }
    if (in_fundamental_region(v)) {
      out.kind = negative ? RootKind::ImaginaryNegative : RootKind::ImaginaryPositive;
      break;
    }
    std::size_t pick = rank();
    for (std::size_t i = 0; i < rank(); ++i)
      if (form_with_simple(i, v) > 0) {
        pick = i;
        break;
      }
    if (pick == rank()) return out;
    v = reflect(pick, std::move(v));
    applied.push_back(pick);
    if (!v.is_nonnegative() || v.is_zero()) return out;
  }
  out.witness.assign(applied.rbegin(), applied.rend());
  return out;
}

std::vector<DimVector> RootSystem::positive_roots_bounded(const DimVector& bound) const {
  check(bound);
  if (!bound.is_nonnegative()) throw InvalidInput("root enumeration bound must be nonnegative");
  std::vector<DimVector> roots;
  DimVector v(rank());
  while (true) {
    std::size_t k = 0;
    while (k < rank() && v[k] == bound[k]) v[k++] = 0;
    if (k == rank()) break;
    ++v[k];
    if (classify(v).is_positive()) roots.push_back(v);
  }
  std::sort(roots.begin(), roots.end(), [](const DimVector& a, const DimVector& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a < b;
  });
  return roots;
}

ParamVector RootSystem::lattice_translation(const DimVector& d, const ParamVector& lambda, const DimVector& shift) const {
  check(d);
  check(lambda);
  check(shift);
  std::int64_t dot = 0;
  for (std::size_t i = 0; i < rank(); ++i) dot += shift[i] * d[i];
  if (dot != 0) throw InvalidInput("translation is not in the lattice orthogonal to d (t·d = " + std::to_string(dot) + ")");
  ParamVector out = lambda;
  for (std::size_t i = 0; i < rank(); ++i)
    if (shift[i] != 0) out[i] += ExactComplex(Rational(static_cast<long>(shift[i])));
  return out;
}

}  // namespace qc
