#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "quiverconn/exact.hpp"
#include "quiverconn/graph.hpp"
#include "quiverconn/linalg.hpp"
#include "quiverconn/root_system.hpp"

namespace qc {

/// Point of 𝕍(Q): for every arrow e a map φ_e : V_t(e) -> V_h(e) and a map
/// φ_e* : V_h(e) -> V_t(e). dims follows the canonical node order.
struct QuiverRep {
  Quiver quiver;
  DimVector dims;
  std::vector<CMatrix> forward;   // φ_e, dims[h] x dims[t]
  std::vector<CMatrix> backward;  // φ_e*, dims[t] x dims[h]

  /// Throws InvalidInput on any shape inconsistency.
  void validate() const;
  std::int64_t dim(const NodeId& node) const { return dims[quiver.graph().index_of(node)]; }
  std::int64_t total_dim() const { return dims.height(); }
  /// Zero representation of the given dimension vector.
  static QuiverRep zero(const Quiver& q, const DimVector& dims);
};

/// Per-node values μ_i, canonical node order.
struct MomentValue {
  std::vector<CMatrix> blocks;

  std::complex<double> trace_sum() const;
};

MomentValue moment_map(const QuiverRep& rep);

/// max_i max |μ_i - λ_i·Id| (entrywise).
double moment_residual(const QuiverRep& rep, const ParamVector& lambda);
/// Magnitude of the quadratic terms entering μ: max(1, max_e |φ_e|_F |φ_e*|_F).
double moment_scale(const QuiverRep& rep);

/// Adjoint orbit data for a leg: roots x_1..x_w of an annihilating
/// polynomial and ranks d_i = rank (A-x_1)...(A-x_i), i = 1..w-1.
struct OrbitSpec {
  int size = 0;
  std::vector<ExactComplex> roots;
  std::vector<int> ranks;

  /// Throws InvalidInput unless ranks are positive, weakly decreasing,
  /// bounded by size, and there is exactly one fewer rank than roots.
  void validate() const;
  /// Dimensions down the leg: size, d_1, ..., d_l.
  std::vector<int> leg_dims() const;
  /// λ_0 = -x_1 (open node), λ_i = x_i - x_{i+1}.
  std::vector<ExactComplex> leg_params() const;
  /// Differences of roots that are nonzero integers (resonances).
  std::vector<ExactComplex> resonances() const;
};

/// The leg attached to a matrix A and an ordered root list annihilating it.
struct Leg {
  std::vector<int> dims;              // n, d_1, ..., d_l
  std::vector<ExactComplex> params;   // λ_0 = -x_1, λ_1, ..., λ_l
  std::vector<CMatrix> p;             // p_j : V_{j-1} -> V_j (surjective), j = 1..l
  std::vector<CMatrix> q;             // q_j : V_j -> V_{j-1} (injective)
  double annihilation_residual = 0;   // |prod (A - x_h)|_max
  double reconstruction_residual = 0; // |A - (q_1 p_1 + x_1)|_max

  /// Leg quiver with arrows pointing to node names[0] (the open node),
  /// φ_e = q_j and φ_e* = p_j. Defaults to names "0", ..., "l".
  QuiverRep as_rep(std::vector<NodeId> names = {}) const;
};

/// Throws InvalidInput when the roots do not annihilate A.
Leg leg_from_matrix(const CMatrix& a, const std::vector<ExactComplex>& roots);

struct ReflectedRep {
  QuiverRep rep;
  ParamVector lambda;
};

/// Reflection functor at `node`: maps a point of μ⁻¹(λ) with dims d to a
/// point of μ⁻¹(r_i λ) with dims s_i d. Throws ReflectionUndefined when
/// λ_i = 0 and InvalidInput when rep is not in μ⁻¹(λ) within 1e-8.
ReflectedRep reflection_functor(const QuiverRep& rep, const ParamVector& lambda, std::size_t node);

/// Simplicity test: randomized closure pre-filter followed by Burnside's
/// criterion (the arrow maps generate all of End(V)).
bool is_stable(const QuiverRep& rep, int trials, std::uint64_t seed);

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts with variance 1/2).
QuiverRep random_rep(const Quiver& q, const DimVector& dims, std::uint64_t seed);

/// GL-invariant trace data: tr(φ_e* φ_e) for every arrow, then for each
/// node i and L = 1..max_length the values tr(e_i M^L) where M ranges over
/// `samples` seeded random combinations of the doubled arrows. Each value is
/// a fixed linear combination of closed-walk traces of length L at i.
std::vector<std::complex<double>> trace_invariants(const QuiverRep& rep, int max_length, std::uint64_t seed,
                                                   int samples = 3);

}  // namespace qc
