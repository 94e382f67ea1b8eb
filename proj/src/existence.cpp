#include "quiverconn/existence.hpp"

#include <limits>
#include <map>
#include <optional>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

class Search {
 public:
  Search(const Graph& g, const DimVector& d, const ParamVector& lambda, std::size_t limit)
      : rs_(g), limit_(limit) {
    if (d.size() != rs_.rank() || lambda.size() != rs_.rank())
      throw InvalidInput("dimension and parameter vectors must match the graph");
    if (!d.is_nonnegative()) throw InvalidInput("dimension vector must be nonnegative");
    for (const auto& beta : rs_.positive_roots_bounded(d))
      if (pairing(beta, lambda).is_zero()) roots_.push_back(beta);
  }

  const RootSystem& roots() const { return rs_; }
  const std::vector<DimVector>& orthogonal_roots() const { return roots_; }

  bool reachable(const DimVector& v) {
    if (v.is_zero()) return true;
    if (auto it = reach_.find(v); it != reach_.end()) return it->second.has_value();
    tick();
    std::optional<std::size_t> choice;
    for (std::size_t k = 0; k < roots_.size() && !choice; ++k)
      if (roots_[k].fits_in(v) && reachable(v - roots_[k])) choice = k;
    reach_[v] = choice;
    return choice.has_value();
  }

  Decomposition reach_witness(DimVector v) {
    Decomposition out;
    while (!v.is_zero()) {
      const auto k = *reach_.at(v);
      out.push_back(roots_[k]);
      v -= roots_[k];
    }
    return out;
  }

  // Largest Σ Δ over decompositions of v into at least one part.
  std::optional<std::int64_t> best(const DimVector& v) {
    if (auto it = best_.find(v); it != best_.end()) return it->second.value;
    tick();
    Best b;
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      const auto& beta = roots_[k];
      if (!beta.fits_in(v)) continue;
      const DimVector rest = v - beta;
      std::optional<std::int64_t> tail = rest.is_zero() ? std::optional<std::int64_t>(0) : best(rest);
      if (!tail) continue;
      const std::int64_t value = rs_.delta(beta) + *tail;
      if (!b.value || value > *b.value) b = {value, k};
    }
    best_[v] = b;
    return b.value;
  }

  Decomposition best_witness(DimVector v) {
    Decomposition out;
    while (!v.is_zero()) {
      const auto k = best_.at(v).choice;
      out.push_back(roots_[k]);
      v -= roots_[k];
    }
    return out;
  }

  void enumerate(const DimVector& v, std::size_t from, Decomposition& prefix, std::vector<Decomposition>& out) {
    tick();
    if (v.is_zero()) {
      out.push_back(prefix);
      return;
    }
    for (std::size_t k = from; k < roots_.size(); ++k) {
      if (!roots_[k].fits_in(v)) continue;
      prefix.push_back(roots_[k]);
      enumerate(v - roots_[k], k, prefix, out);
      prefix.pop_back();
    }
  }

 private:
  struct Best {
    std::optional<std::int64_t> value;
    std::size_t choice = 0;
  };

  void tick() {
    if (++states_ > limit_)
      throw ResourceLimitExceeded("decomposition search exceeded " + std::to_string(limit_) + " states");
  }

  RootSystem rs_;
  std::size_t limit_;
  std::size_t states_ = 0;
  std::vector<DimVector> roots_;
  std::map<DimVector, std::optional<std::size_t>> reach_;
  std::map<DimVector, Best> best_;
};

std::string residue_reason(const ExactComplex& value) {
  return "lambda.d = " + value.to_string() + " is nonzero (residue theorem fails), so the variety is empty";
}

}  // namespace

ExistenceVerdict nonempty(const Graph& g, const DimVector& d, const ParamVector& lambda, std::size_t state_limit) {
  ExistenceVerdict v;
  const ExactComplex ld = pairing(d, lambda);
  if (!ld.is_zero()) {
    v.nonempty_reason = residue_reason(ld);
    return v;
  }
  Search s(g, d, lambda, state_limit);
  v.nonempty = s.reachable(d);
  if (v.nonempty) {
    v.witness = s.reach_witness(d);
    v.nonempty_reason = "d is a sum of " + std::to_string(v.witness.size()) + " lambda-orthogonal positive roots";
  } else {
    v.nonempty_reason = "d is not a sum of lambda-orthogonal positive roots";
  }
  return v;
}

ExistenceVerdict has_stable(const Graph& g, const DimVector& d, const ParamVector& lambda, std::size_t state_limit) {
  ExistenceVerdict v;
  const ExactComplex ld = pairing(d, lambda);
  if (!ld.is_zero()) {
    v.stable_reason = residue_reason(ld);
    return v;
  }
  Search s(g, d, lambda, state_limit);
  if (!s.roots().classify(d).is_positive()) {
    v.stable_reason = "d is not a positive root";
    return v;
  }
  const std::int64_t target = s.roots().delta(d);
  // Decompositions with at least two parts: a first part β ≠ d, then any decomposition of d - β.
  std::optional<std::int64_t> best;
  Decomposition arg;
  for (const auto& beta : s.orthogonal_roots()) {
    if (beta == d || !beta.fits_in(d)) continue;
    const auto tail = s.best(d - beta);
    if (!tail) continue;
    const std::int64_t value = s.roots().delta(beta) + *tail;
    if (!best || value > *best) {
      best = value;
      arg = {beta};
      const auto rest = s.best_witness(d - beta);
      arg.insert(arg.end(), rest.begin(), rest.end());
    }
  }
  if (best && *best >= target) {
    v.violation = arg;
    v.stable_reason = "decomposition into " + std::to_string(arg.size()) + " roots has sum of Delta " +
                      std::to_string(*best) + " >= Delta(d) = " + std::to_string(target);
    return v;
  }
  v.stable = true;
  v.stable_reason = best ? "every proper decomposition has sum of Delta at most " + std::to_string(*best) +
                               " < Delta(d) = " + std::to_string(target)
                         : "d is a positive root with no proper lambda-orthogonal decomposition";
  return v;
}

ExistenceVerdict existence(const Graph& g, const DimVector& d, const ParamVector& lambda, std::size_t state_limit) {
  ExistenceVerdict v = nonempty(g, d, lambda, state_limit);
  const ExistenceVerdict s = has_stable(g, d, lambda, state_limit);
  v.stable = s.stable;
  v.violation = s.violation;
  v.stable_reason = s.stable_reason;
  return v;
}

std::vector<Decomposition> enumerate_decompositions(const Graph& g, const DimVector& d, const ParamVector& lambda,
                                                    std::size_t state_limit) {
  Search s(g, d, lambda, state_limit);
  std::vector<Decomposition> out;
  Decomposition prefix;
  if (!d.is_zero()) s.enumerate(d, 0, prefix, out);
  return out;
}

ConnectionVerdict exists_stable_connection(const ConnectionSpec& spec, std::size_t state_limit) {
  ConnectionVerdict out{build_quiver(spec), {}};
  out.verdict = existence(out.quiver.graph, out.quiver.dims, out.quiver.lambda, state_limit);
  return out;
}

}  // namespace qc
