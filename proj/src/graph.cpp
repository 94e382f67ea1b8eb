#include "quiverconn/graph.hpp"

#include <algorithm>
#include <sstream>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

Graph::EdgeKey edge_key(const NodeId& a, const NodeId& b) { return a < b ? Graph::EdgeKey{a, b} : Graph::EdgeKey{b, a}; }

std::string quoted(const NodeId& id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void check_new_names(const Graph& g, const std::vector<NodeId>& names, const NodeId& replaced) {
  std::set<NodeId> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw InvalidInput("duplicate node id '" + n + "'");
    if (n != replaced && g.contains(n)) throw InvalidInput("node id '" + n + "' already in use");
  }
}

}  // namespace

void Graph::add_node(const NodeId& id, bool open) {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it != nodes_.end() && *it == id) throw InvalidInput("duplicate node id '" + id + "'");
  nodes_.insert(it, id);
  if (open) open_.insert(id);
}

void Graph::add_edge(const NodeId& a, const NodeId& b, int multiplicity) {
  if (a == b) throw InvalidInput("edge loop at node '" + a + "'");
  if (!contains(a) || !contains(b)) throw InvalidInput("edge endpoint is not a node: '" + a + "' -- '" + b + "'");
  if (multiplicity < 0) throw InvalidInput("negative edge multiplicity");
  if (multiplicity == 0) return;
  edges_[edge_key(a, b)] += multiplicity;
}

void Graph::remove_node(const NodeId& id) {
  nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(index_of(id)));
  open_.erase(id);
  std::erase_if(edges_, [&](const auto& e) { return e.first.first == id || e.first.second == id; });
}

void Graph::set_open(const NodeId& id, bool open) {
  index_of(id);
  if (open)
    open_.insert(id);
  else
    open_.erase(id);
}

bool Graph::contains(std::string_view id) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), id, std::less<>{});
}

std::size_t Graph::index_of(std::string_view id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id, std::less<>{});
  if (it == nodes_.end() || *it != id) throw InvalidInput("unknown node '" + std::string(id) + "'");
  return static_cast<std::size_t>(it - nodes_.begin());
}

int Graph::multiplicity(const NodeId& a, const NodeId& b) const {
  auto it = edges_.find(edge_key(a, b));
  return it == edges_.end() ? 0 : it->second;
}

int Graph::edge_count() const {
  int total = 0;
  for (const auto& [key, m] : edges_) total += m;
  return total;
}

std::vector<NodeId> Graph::neighbours(const NodeId& id) const {
  std::vector<NodeId> out;
  for (const auto& [key, m] : edges_) {
    if (key.first == id) out.push_back(key.second);
    if (key.second == id) out.push_back(key.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> a(nodes_.size(), std::vector<int>(nodes_.size(), 0));
  for (const auto& [key, m] : edges_) {
    const auto i = index_of(key.first);
    const auto j = index_of(key.second);
    a[i][j] = a[j][i] = m;
  }
  return a;
}

Quiver::Quiver(Graph graph, std::vector<Arrow> arrows) : graph_(std::move(graph)), arrows_(std::move(arrows)) {
  std::map<Graph::EdgeKey, int> count;
  for (const auto& a : arrows_) {
    if (a.tail == a.head) throw InvalidInput("arrow loop at '" + a.tail + "'");
    ++count[edge_key(a.tail, a.head)];
  }
  if (count != graph_.edges()) throw InvalidInput("orientation does not cover every edge exactly once");
}

Quiver Quiver::canonical(Graph graph) {
  std::vector<Arrow> arrows;
  for (const auto& [key, m] : graph.edges())
    for (int k = 0; k < m; ++k) arrows.push_back({key.first, key.second});
  return Quiver(std::move(graph), std::move(arrows));
}

void FissionTree::validate() const {
  if (levels.empty()) throw InvalidInput("fission tree has no levels");
  for (std::size_t l = 0; l < levels.size(); ++l) {
    if (levels[l].empty()) throw InvalidInput("empty fission level");
    std::set<NodeId> names(levels[l].begin(), levels[l].end());
    if (names.size() != levels[l].size()) throw InvalidInput("duplicate node in fission level");
    if (l == 0) continue;
    std::set<NodeId> previous(levels[l - 1].begin(), levels[l - 1].end());
    std::set<NodeId> hit;
    for (const auto& n : levels[l]) {
      auto it = parent.find(n);
      if (it == parent.end() || previous.count(it->second) == 0)
        throw InvalidInput("fission node '" + n + "' has no parent on the previous level");
      hit.insert(it->second);
    }
    if (hit != previous) throw InvalidInput("fission map onto level " + std::to_string(l) + " is not surjective");
  }
  for (const auto& n : levels.back()) {
    auto it = leaf_dims.find(n);
    if (it == leaf_dims.end() || it->second <= 0) throw InvalidInput("leaf '" + n + "' needs a positive dimension");
  }
}

std::map<NodeId, int> FissionTree::level_dims(std::size_t level) const {
  if (level >= levels.size()) throw InvalidInput("fission level out of range");
  std::map<NodeId, int> dims(leaf_dims);
  for (std::size_t l = levels.size() - 1; l > level; --l) {
    std::map<NodeId, int> up;
    for (const auto& n : levels[l]) up[parent.at(n)] += dims.at(n);
    dims = std::move(up);
  }
  return dims;
}

Graph complete_k_partite(const Partition& parts) {
  Graph g;
  for (const auto& part : parts) {
    if (part.empty()) throw InvalidInput("empty part in partition");
    for (const auto& n : part) g.add_node(n);
  }
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b)
      for (const auto& x : parts[a])
        for (const auto& y : parts[b]) g.add_edge(x, y);
  return g;
}

Graph attach_leg(const Graph& g, const NodeId& node, int length) {
  if (length < 0) throw InvalidInput("negative leg length");
  std::vector<NodeId> names;
  for (int k = 1; k <= length; ++k) names.push_back(node + "." + std::to_string(k));
  return attach_leg(g, node, names);
}

Graph attach_leg(const Graph& g, const NodeId& node, const std::vector<NodeId>& leg_nodes) {
  g.index_of(node);
  check_new_names(g, leg_nodes, {});
  Graph out = g;
  NodeId previous = node;
  for (const auto& n : leg_nodes) {
    out.add_node(n);
    out.add_edge(previous, n);
    previous = n;
  }
  return out;
}

Quiver splay(const Quiver& q, const NodeId& open_node, const std::vector<NodeId>& parts) {
  const Graph& g = q.graph();
  g.index_of(open_node);
  if (!g.is_open(open_node)) throw InvalidInput("cannot splay closed node '" + open_node + "'");
  if (parts.empty()) throw InvalidInput("splay needs a nonempty set");
  check_new_names(g, parts, open_node);

  auto preimage = [&](const NodeId& n) { return n == open_node ? parts : std::vector<NodeId>{n}; };
  Graph out;
  for (const auto& n : g.nodes())
    if (n != open_node) out.add_node(n, g.is_open(n));
  for (const auto& n : parts) out.add_node(n, true);
  for (const auto& [key, m] : g.edges())
    for (const auto& a : preimage(key.first))
      for (const auto& b : preimage(key.second)) out.add_edge(a, b, m);
  std::vector<Arrow> arrows;
  for (const auto& arrow : q.arrows())
    for (const auto& t : preimage(arrow.tail))
      for (const auto& h : preimage(arrow.head)) arrows.push_back({t, h});
  return Quiver(std::move(out), std::move(arrows));
}

Quiver glue(const Quiver& q, const NodeId& i, const NodeId& j, const NodeId& merged) {
  const Graph& g = q.graph();
  g.index_of(i);
  g.index_of(j);
  if (i == j) throw InvalidInput("cannot glue a node to itself");
  if (!g.is_open(i) || !g.is_open(j)) throw InvalidInput("only open nodes can be glued");
  if (g.multiplicity(i, j) != 0) throw InvalidInput("gluing adjacent nodes would create an edge loop");
  const NodeId name = merged.empty() ? i : merged;
  if (name != i && name != j && g.contains(name)) throw InvalidInput("node id '" + name + "' already in use");

  auto image = [&](const NodeId& n) { return (n == i || n == j) ? name : n; };
  Graph out;
  for (const auto& n : g.nodes())
    if (n != i && n != j) out.add_node(n, g.is_open(n));
  out.add_node(name, true);
  for (const auto& [key, m] : g.edges()) out.add_edge(image(key.first), image(key.second), m);
  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows()) arrows.push_back({image(a.tail), image(a.head)});
  return Quiver(std::move(out), std::move(arrows));
}

Quiver r_fission(const Quiver& q, const NodeId& open_node, const std::vector<NodeId>& parts, int r) {
  if (r < 0) throw InvalidInput("negative fission multiplicity");
  Quiver s = splay(q, open_node, parts);
  if (r == 0) return s;
  Graph g = s.graph();
  std::vector<Arrow> arrows = s.arrows();
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      g.add_edge(parts[a], parts[b], r);
      const auto& [lo, hi] = edge_key(parts[a], parts[b]);
      for (int k = 0; k < r; ++k) arrows.push_back({lo, hi});
    }
  return Quiver(std::move(g), std::move(arrows));
}

Graph fission_graph(const FissionTree& tree, int pole_order) {
  tree.validate();
  if (pole_order < 2 || tree.levels.size() != static_cast<std::size_t>(pole_order - 1))
    throw InvalidInput("a pole of order " + std::to_string(pole_order) + " needs " +
                       std::to_string(pole_order - 1) + " fission levels, got " +
                       std::to_string(tree.levels.size()));
  // Level-prefixed internal names keep repeated ids on different levels apart.
  auto internal = [](std::size_t level, const NodeId& n) { return std::to_string(level) + ":" + n; };

  Graph seed;
  seed.add_node("root", true);
  Quiver q = Quiver::canonical(seed);
  for (std::size_t level = 0; level < tree.levels.size(); ++level) {
    const int r = pole_order - 2 - static_cast<int>(level);
    if (level == 0) {
      std::vector<NodeId> names;
      for (const auto& n : tree.levels[0]) names.push_back(internal(0, n));
      q = r_fission(q, "root", names, r);
      continue;
    }
    for (const auto& p : tree.levels[level - 1]) {
      std::vector<NodeId> children;
      for (const auto& c : tree.levels[level])
        if (tree.parent.at(c) == p) children.push_back(internal(level, c));
      q = r_fission(q, internal(level - 1, p), children, r);
    }
  }
  const std::size_t last = tree.levels.size() - 1;
  const std::string prefix = std::to_string(last) + ":";
  Graph out;
  for (const auto& n : tree.levels[last]) out.add_node(n);
  for (const auto& [key, m] : q.graph().edges())
    out.add_edge(key.first.substr(prefix.size()), key.second.substr(prefix.size()), m);
  return out;
}

std::string to_dot(const Graph& g, const std::map<NodeId, std::string>& comments) {
  std::ostringstream out;
  out << "graph G {\n";
  for (const auto& n : g.nodes()) {
    std::vector<std::string> attrs;
    if (g.is_open(n)) attrs.emplace_back("shape=circle,style=dashed");
    if (auto it = comments.find(n); it != comments.end()) attrs.push_back("comment=" + quoted(it->second));
    out << "  " << quoted(n);
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t k = 0; k < attrs.size(); ++k) out << (k ? "," : "") << attrs[k];
      out << "]";
    }
    out << ";\n";
  }
  for (const auto& [key, m] : g.edges())
    for (int k = 0; k < m; ++k) out << "  " << quoted(key.first) << " -- " << quoted(key.second) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace qc
