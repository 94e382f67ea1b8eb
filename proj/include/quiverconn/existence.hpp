#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quiverconn/connection_spec.hpp"
#include "quiverconn/graph.hpp"
#include "quiverconn/root_system.hpp"

namespace qc {

inline constexpr std::size_t kDefaultStateLimit = 1000000;

using Decomposition = std::vector<DimVector>;

struct ExistenceVerdict {
  bool nonempty = false;
  Decomposition witness;  // λ-orthogonal positive roots summing to d
  std::string nonempty_reason;

  bool stable = false;
  Decomposition violation;  // ≥ 2 parts with Δ(d) <= Σ Δ(β_i); empty if d is not a positive root
  std::string stable_reason;
};

/// d = Σ β_i with positive roots β_i, λ·β_i = 0. Fills the nonempty fields.
ExistenceVerdict nonempty(const Graph& g, const DimVector& d, const ParamVector& lambda,
                          std::size_t state_limit = kDefaultStateLimit);

/// d a positive root and Δ(d) > Σ Δ(β_i) for every λ-orthogonal decomposition
/// into two or more positive roots. Fills the stable fields only.
ExistenceVerdict has_stable(const Graph& g, const DimVector& d, const ParamVector& lambda,
                            std::size_t state_limit = kDefaultStateLimit);

/// Both parts of the verdict.
ExistenceVerdict existence(const Graph& g, const DimVector& d, const ParamVector& lambda,
                           std::size_t state_limit = kDefaultStateLimit);

/// Every multiset of λ-orthogonal positive roots summing to d (including
/// the one-part decomposition when d is such a root), each listed in the
/// canonical root order, in lexicographic order of index sequences.
std::vector<Decomposition> enumerate_decompositions(const Graph& g, const DimVector& d, const ParamVector& lambda,
                                                    std::size_t state_limit = kDefaultStateLimit);

struct ConnectionVerdict {
  QuiverData quiver;
  ExistenceVerdict verdict;
};

ConnectionVerdict exists_stable_connection(const ConnectionSpec& spec, std::size_t state_limit = kDefaultStateLimit);

}  // namespace qc
