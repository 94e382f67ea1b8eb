#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quiverconn/exact_matrix.hpp"
#include "quiverconn/graph.hpp"
#include "quiverconn/quiver_rep.hpp"
#include "quiverconn/root_system.hpp"

namespace qc {

using PartLabel = std::string;

/// Totally ordered parts I_j (j in J, in vector order) and the extra set I_0.
struct IJData {
  std::vector<PartLabel> labels;
  std::vector<std::vector<NodeId>> parts;
  std::vector<NodeId> extra;

  bool is_complete() const { return extra.empty(); }
  std::size_t part_of(const NodeId& node) const;
  /// Throws InvalidInput on empty parts, clashes or duplicate labels.
  void validate() const;
  friend bool operator==(const IJData&, const IJData&) = default;
};

/// Block structure of V = ⊕_j W_j, W_j = ⊕_{i in I_j} V_i, nodes sorted within parts.
struct BlockLayout {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> part;        // part index per entry of nodes
  std::vector<std::size_t> offset;      // size nodes.size() + 1
  std::vector<std::size_t> part_offset; // size parts + 1
  std::map<NodeId, std::size_t> position;

  std::size_t total() const { return offset.back(); }
  std::size_t dim(std::size_t k) const { return offset[k + 1] - offset[k]; }
};

/// A representation: dims of V_i for the nodes of the parts, α as one
/// End(V) matrix whose (h, j) block maps W_j to W_h, and residues B_i for I_0.
struct IJRep {
  IJData data;
  std::map<NodeId, int> dims;
  ExactMatrix alpha;
  std::map<NodeId, ExactMatrix> residues;

  BlockLayout layout() const;
  /// Block of α mapping W_j to W_h.
  ExactMatrix alpha_block(std::size_t h, std::size_t j) const;
  void validate() const;
  friend bool operator==(const IJRep&, const IJRep&) = default;
};

struct RealizationData {
  std::map<PartLabel, ExactComplex> a;
  std::map<NodeId, ExactComplex> b;  // every node of I, including I_0

  void validate(const IJData& data) const;
  friend bool operator==(const RealizationData&, const RealizationData&) = default;
};

struct Residue {
  NodeId node;
  ExactComplex position;
  ExactMatrix matrix;
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// The connection -(A0 w + B - Σ B_i/(w - b_i)) dw on V x P^1.
struct ConnectionMatrices {
  ExactMatrix a0, a1, b;
  std::vector<Residue> residues;
  int pole_order_at_infinity = 3;  // nominal, in z = 1/w
  int minimal_pole_order = 3;      // after the admissible degenerations
  // Optional layout: part labels in J order and the owning node of each basis vector.
  std::vector<PartLabel> part_labels;
  std::vector<NodeId> basis_owner;

  friend bool operator==(const ConnectionMatrices&, const ConnectionMatrices&) = default;
};

ConnectionMatrices realize(const IJRep& rep, const RealizationData& rd);

/// Inverse of realize. Uses the layout when present; otherwise A0, A1 must
/// be diagonalizable over exact rationals (parts ordered by eigenvalue).
std::pair<IJRep, RealizationData> from_connection(const ConnectionMatrices& cm);

using Twist = std::map<NodeId, ExactComplex>;

/// True when every x_i is an eigenvalue of B_i.
bool is_proper_twist(const IJRep& rep, const Twist& twist);
/// Passage to complete data; the new minimal part is labelled `label`.
IJRep complete(const IJRep& rep, const Twist& twist, const PartLabel& label = "0");
/// Moves the minimal part to the end, negating the blocks out of it.
IJRep cycle(const IJRep& rep);
/// Left inverse of complete: the minimal part becomes I_0 with B_i = q_i p_i + x_i.
IJRep incomplete(const IJRep& rep, const Twist& twist);

/// ˇB_i = p_i σ_j q_i in End(V_i).
ExactMatrix check_B(const IJRep& rep, const NodeId& node);

/// Roots of the minimal polynomial with multiplicity, sorted by (re, im).
/// `exact` is set when the roots were reconstructed as rationals and verified
/// exactly; otherwise they are the binary values of the numeric eigenvalues.
struct RootList {
  std::vector<ExactComplex> roots;
  bool exact = false;
};
RootList minimal_polynomial_roots(const ExactMatrix& m);

struct QuiverPoint {
  Quiver quiver;
  DimVector dims;
  ParamVector lambda;
  QuiverRep rep;
  std::map<NodeId, std::vector<ExactComplex>> roots;  // per centre node
  std::map<NodeId, std::vector<NodeId>> legs;         // leg node names away from the centre
  /// Largest numeric annihilation residual over the legs.
  double leg_residual = 0;
};

using RootOrderings = std::map<NodeId, std::vector<ExactComplex>>;

/// Centre quiver oriented from lower to higher parts, one leg per node.
/// Orderings override the default sorted roots; supplied numeric roots are
/// snapped to the override when within 1e-7.
QuiverPoint to_quiver_point(const IJRep& rep, const RootOrderings& orderings = {});

struct ReadingReport {
  std::optional<PartLabel> removed_part;
  std::int64_t bundle_rank = 0;
  int simple_pole_count = 0;
  std::vector<int> pole_orders;  // order at infinity first
  std::map<NodeId, std::string> roles;
};

/// The principal reading and one reading per removable part.
std::vector<ReadingReport> enumerate_readings(const IJData& data, const std::map<NodeId, int>& dims);

struct IJStability {
  bool stable = false;
  std::vector<std::string> inconsistencies;
};
IJStability is_stable_ijrep(const IJRep& rep, int trials = 16, std::uint64_t seed = 1);

/// Seeded random representation with exact entries (a + b i)/4, a, b in
/// [-spread, spread]; α vanishes on diagonal blocks, residues are dense.
IJRep random_ijrep(const IJData& data, const std::map<NodeId, int>& dims, std::uint64_t seed, int spread = 8);

/// Central quiver (complete k-partite, oriented by J order) with α as its point.
QuiverRep central_rep(const IJRep& rep);

}  // namespace qc
