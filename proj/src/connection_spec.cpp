#include "quiverconn/connection_spec.hpp"

#include <algorithm>
#include <set>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

std::string describe(const std::vector<ExactComplex>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? ", " : "") + values[k].to_string();
  return out;
}

struct Assembly {
  Partition parts;
  std::vector<PartLabel> labels;
  std::map<NodeId, std::vector<NodeId>> legs;
  std::map<NodeId, std::int64_t> dims;
  std::map<NodeId, ExactComplex> lambda;
  std::vector<std::string> warnings;
};

QuiverData assemble(Assembly a) {
  QuiverData out;
  out.graph = complete_k_partite(a.parts);
  for (const auto& [node, names] : a.legs) out.graph = attach_leg(out.graph, node, names);
  const auto& nodes = out.graph.nodes();
  out.dims = DimVector(nodes.size());
  out.lambda = ParamVector(nodes.size());
  for (const auto& [node, d] : a.dims)
    if (!out.graph.contains(node)) throw InvalidInput("dimension given for unknown node '" + node + "'");
  for (const auto& [node, x] : a.lambda)
    if (!out.graph.contains(node)) throw InvalidInput("parameter given for unknown node '" + node + "'");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    auto d = a.dims.find(nodes[k]);
    if (d == a.dims.end()) throw InvalidInput("no dimension for node '" + nodes[k] + "'");
    if (d->second < 0) throw InvalidInput("negative dimension at node '" + nodes[k] + "'");
    out.dims[k] = d->second;
    auto l = a.lambda.find(nodes[k]);
    out.lambda[k] = l == a.lambda.end() ? ExactComplex(0) : l->second;
  }
  out.centre.labels = std::move(a.labels);
  out.centre.parts = std::move(a.parts);
  out.centre.validate();
  out.legs = std::move(a.legs);
  out.warnings = std::move(a.warnings);
  return out;
}

}  // namespace

int ConnectionSpec::rank() const {
  int n = 0;
  for (const auto& p : pole.parts)
    for (const auto& node : p.nodes) n += node.dim;
  return n;
}

std::map<NodeId, int> QuiverData::centre_dims() const {
  std::map<NodeId, int> out;
  for (const auto& p : centre.parts)
    for (const auto& n : p) out[n] = static_cast<int>(dims[graph.index_of(n)]);
  return out;
}

std::vector<std::string> resonance_warnings(const ConnectionSpec& spec) {
  std::vector<std::string> out;
  auto check = [&](const std::string& where, const OrbitSpec& orbit) {
    const auto r = orbit.resonances();
    if (!r.empty()) out.push_back("resonant orbit at " + where + ": root differences " + describe(r) + " are nonzero integers");
  };
  for (const auto& p : spec.pole.parts)
    for (const auto& node : p.nodes) check("node '" + node.id + "'", node.orbit);
  for (const auto& h : spec.simple_poles) check("simple pole '" + h.id + "'", h.orbit);
  return out;
}

QuiverData build_quiver(const ConnectionSpec& spec) {
  const auto& pole = spec.pole;
  if (pole.order < 1 || pole.order > 3) throw InvalidInput("pole order at infinity must be 1, 2 or 3");
  if (pole.parts.empty()) throw InvalidInput("the pole at infinity needs at least one part");
  if (pole.order <= 2 && pole.parts.size() != 1) throw InvalidInput("a pole of order <= 2 has a single A0-eigenspace");
  if (pole.order == 1 && pole.parts[0].nodes.size() != 1) throw InvalidInput("a pole of order 1 has scalar A1");
  const int n = spec.rank();

  Assembly a;
  a.warnings = resonance_warnings(spec);
  std::set<NodeId> ids;
  auto claim = [&](const NodeId& id) {
    if (id.empty()) throw InvalidInput("empty node id");
    if (!ids.insert(id).second) throw InvalidInput("duplicate node id '" + id + "'");
  };

  // Simple poles: the orbit leg of B_h with its open end splayed into the centre.
  ExactComplex shift(0);
  std::vector<NodeId> pole_nodes;
  std::set<std::string> positions;
  for (const auto& h : spec.simple_poles) {
    claim(h.id);
    if (!positions.insert(h.position.to_string()).second) throw InvalidInput("two simple poles at the same position");
    OrbitSpec orbit = h.orbit;
    if (orbit.size != n) throw InvalidInput("residue orbit at '" + h.id + "' must have size equal to the rank");
    orbit.validate();
    shift += orbit.roots.front();
    const auto dims = orbit.leg_dims();
    const auto params = orbit.leg_params();
    if (dims.size() < 2) {
      a.warnings.push_back("simple pole '" + h.id + "' has a scalar residue and contributes no node");
      continue;
    }
    pole_nodes.push_back(h.id);
    a.dims[h.id] = dims[1];
    a.lambda[h.id] = params[1];
    for (std::size_t k = 2; k < dims.size(); ++k) {
      const NodeId name = h.id + "." + std::to_string(k - 1);
      a.legs[h.id].push_back(name);
      a.dims[name] = dims[k];
      a.lambda[name] = params[k];
    }
  }
  if (!pole_nodes.empty()) {
    a.parts.push_back(pole_nodes);
    a.labels.push_back("0");
  }

  std::set<std::string> a_values;
  for (std::size_t j = 0; j < pole.parts.size(); ++j) {
    const auto& part = pole.parts[j];
    if (part.nodes.empty()) throw InvalidInput("empty part at infinity");
    if (!a_values.insert(part.a.to_string()).second) throw InvalidInput("A0 eigenvalues a_j must be distinct");
    const PartLabel label = part.label.empty() ? std::to_string(j + 1) : part.label;
    if (std::find(a.labels.begin(), a.labels.end(), label) != a.labels.end())
      throw InvalidInput("duplicate part label '" + label + "'");
    a.labels.push_back(label);
    std::vector<NodeId> members;
    std::set<std::string> b_values;
    for (const auto& node : part.nodes) {
      claim(node.id);
      if (node.dim < 1) throw InvalidInput("node '" + node.id + "' needs a positive dimension");
      if (!b_values.insert(node.b.to_string()).second) throw InvalidInput("A1 eigenvalues b_i must be distinct within a part");
      OrbitSpec orbit = node.orbit;
      if (orbit.size != node.dim) throw InvalidInput("orbit at '" + node.id + "' must have size equal to the node dimension");
      orbit.validate();
      members.push_back(node.id);
      // ˇB_i = Λ_i + Σ_h x_h1 has roots y_k + shift.
      const auto params = orbit.leg_params();
      const auto dims = orbit.leg_dims();
      a.dims[node.id] = node.dim;
      a.lambda[node.id] = params[0] - shift;
      for (std::size_t k = 1; k < dims.size(); ++k) {
        const NodeId name = node.id + "." + std::to_string(k);
        a.legs[node.id].push_back(name);
        a.dims[name] = dims[k];
        a.lambda[name] = params[k];
      }
    }
    a.parts.push_back(members);
  }
  return assemble(std::move(a));
}

QuiverData build_quiver(const QuiverSpec& spec) {
  if (spec.partition.empty()) throw InvalidInput("quiver partition is empty");
  if (!spec.labels.empty() && spec.labels.size() != spec.partition.size())
    throw InvalidInput("one label per part required");
  Assembly a;
  a.parts = spec.partition;
  for (std::size_t j = 0; j < spec.partition.size(); ++j) {
    if (!spec.labels.empty()) {
      a.labels.push_back(spec.labels[j]);
      continue;
    }
    std::string label = "{";
    for (std::size_t k = 0; k < spec.partition[j].size(); ++k) label += (k ? "," : "") + spec.partition[j][k];
    a.labels.push_back(label + "}");
  }
  for (const auto& [node, leg] : spec.legs) a.legs[node] = leg.nodes;
  a.dims = spec.dims;
  a.lambda = spec.params;
  return assemble(std::move(a));
}

}  // namespace qc
