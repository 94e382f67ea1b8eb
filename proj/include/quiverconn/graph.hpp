#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qc {

using NodeId = std::string;

/// Loop-free multigraph with opaque string node ids.
///
/// Nodes are kept in lexicographic order, which fixes every derived ordering
/// (Cartan matrix rows, vector coordinates, DOT output). Parallel edges are
/// stored as one multiplicity per unordered pair.
class Graph {
 public:
  using EdgeKey = std::pair<NodeId, NodeId>;  // first < second

  void add_node(const NodeId& id, bool open = false);
  void add_edge(const NodeId& a, const NodeId& b, int multiplicity = 1);
  void remove_node(const NodeId& id);
  void set_open(const NodeId& id, bool open);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(std::string_view id) const;
  /// Position of id in the canonical order; throws InvalidInput if absent.
  std::size_t index_of(std::string_view id) const;

  int multiplicity(const NodeId& a, const NodeId& b) const;
  const std::map<EdgeKey, int>& edges() const { return edges_; }
  /// Sum of multiplicities.
  int edge_count() const;
  std::vector<NodeId> neighbours(const NodeId& id) const;

  bool is_open(const NodeId& id) const { return open_.count(id) != 0; }
  const std::set<NodeId>& open_nodes() const { return open_; }

  /// Symmetric adjacency matrix in canonical node order.
  std::vector<std::vector<int>> adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<NodeId> nodes_;
  std::map<EdgeKey, int> edges_;
  std::set<NodeId> open_;
};

struct Arrow {
  NodeId tail;
  NodeId head;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A graph together with an orientation of every unit edge.
class Quiver {
 public:
  Quiver() = default;
  /// Throws InvalidInput unless `arrows` orient each unit edge exactly once.
  Quiver(Graph graph, std::vector<Arrow> arrows);
  /// Orients every edge from the canonically smaller node to the larger one.
  static Quiver canonical(Graph graph);

  const Graph& graph() const { return graph_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  Graph graph_;
  std::vector<Arrow> arrows_;
};

/// Ordered list of disjoint nonempty node sets.
using Partition = std::vector<std::vector<NodeId>>;

/// Nested eigenspace data of a higher order pole: levels J_1..J_{k-1}, the
/// parent of every node of J_i (i >= 2) in J_{i-1}, and leaf dimensions.
struct FissionTree {
  std::vector<std::vector<NodeId>> levels;
  std::map<NodeId, NodeId> parent;  // keyed by nodes of levels[1..]
  std::map<NodeId, int> leaf_dims;  // keyed by nodes of levels.back()

  /// Throws InvalidInput when a map is not a surjection or a dim is not positive.
  void validate() const;
  /// Dimension of every node on `level` (0-based), children summed upward.
  std::map<NodeId, int> level_dims(std::size_t level) const;
};

Graph complete_k_partite(const Partition& parts);

/// Hangs a path of `length` new nodes from `node`. Default names are
/// "<node>.1", "<node>.2", ... counted away from `node`.
Graph attach_leg(const Graph& g, const NodeId& node, int length);
Graph attach_leg(const Graph& g, const NodeId& node, const std::vector<NodeId>& leg_nodes);

Quiver splay(const Quiver& q, const NodeId& open_node, const std::vector<NodeId>& parts);
/// Identifies open nodes i and j into one open node (named i unless given).
Quiver glue(const Quiver& q, const NodeId& i, const NodeId& j, const NodeId& merged = {});
Quiver r_fission(const Quiver& q, const NodeId& open_node, const std::vector<NodeId>& parts, int r);

/// Iterated fission for a pole of order k >= 2: nodes are the leaves J_{k-1}.
Graph fission_graph(const FissionTree& tree, int pole_order);

/// DOT text: node lines sorted, parallel edges repeated, open nodes dashed.
/// `comments` attaches a comment attribute to the named nodes.
std::string to_dot(const Graph& g, const std::map<NodeId, std::string>& comments = {});

}  // namespace qc
