#include "quiverconn/spec_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

using nlohmann::json;

std::string where(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& obj, const char* key, const std::string& context) {
  if (!obj.is_object()) throw InvalidInput(context + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInput(context + " is missing \"" + key + "\"");
  return *it;
}

std::string text_of(const json& j, const std::string& context) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InvalidInput(context + " must be a string or an integer");
}

// Scalars: "p/q", "a+bi", integers, or [re, im].
ExactComplex scalar(const json& j, const std::string& context) {
  if (j.is_number_float()) throw InvalidInput(context + ": floating point scalars are not exact; use \"p/q\"");
  if (j.is_array()) {
    if (j.size() != 2) throw InvalidInput(context + ": complex pair needs [re, im]");
    return {parse_rational(text_of(j[0], context)), parse_rational(text_of(j[1], context))};
  }
  return ExactComplex::parse(text_of(j, context));
}

int integer(const json& j, const std::string& context) {
  if (!j.is_number_integer()) throw InvalidInput(context + " must be an integer");
  return j.get<int>();
}

OrbitSpec orbit(const json& j, int size, const std::string& context) {
  OrbitSpec o;
  o.size = size;
  for (const auto& r : field(j, "roots", context)) o.roots.push_back(scalar(r, context + " root"));
  if (auto it = j.find("ranks"); it != j.end())
    for (const auto& r : *it) o.ranks.push_back(integer(r, context + " rank"));
  return o;
}

ConnectionSpec connection(const json& root) {
  ConnectionSpec spec;
  const json& poles = field(root, "poles", "spec");
  if (!poles.is_array() || poles.size() != 1) throw InvalidInput("\"poles\" must list exactly one irregular pole");
  const json& pole = poles[0];
  const std::string position = text_of(field(pole, "position", "pole"), "pole position");
  if (position != "inf") throw InvalidInput("the irregular pole must sit at position \"inf\"");
  spec.pole.order = integer(field(pole, "order", "pole"), "pole order");
  for (const auto& p : field(pole, "parts", "pole")) {
    PartSpec part;
    if (auto it = p.find("label"); it != p.end()) part.label = text_of(*it, "part label");
    part.a = p.contains("a") ? scalar(p["a"], "part a") : ExactComplex(0);
    for (const auto& n : field(p, "nodes", "part")) {
      CentralNodeSpec node;
      node.id = text_of(field(n, "id", "node"), "node id");
      const std::string ctx = "node '" + node.id + "'";
      node.dim = integer(field(n, "dim", ctx), ctx + " dim");
      node.b = n.contains("b") ? scalar(n["b"], ctx + " b") : ExactComplex(0);
      node.orbit = orbit(field(n, "orbit", ctx), node.dim, ctx + " orbit");
      part.nodes.push_back(node);
    }
    spec.pole.parts.push_back(part);
  }
  const int n = spec.rank();
  if (auto it = root.find("simple_poles"); it != root.end()) {
    if (!it->is_array()) throw InvalidInput("\"simple_poles\" must be an array");
    for (const auto& h : *it) {
      SimplePoleSpec sp;
      sp.id = text_of(field(h, "id", "simple pole"), "simple pole id");
      const std::string ctx = "simple pole '" + sp.id + "'";
      sp.position = scalar(field(h, "position", ctx), ctx + " position");
      sp.orbit = orbit(field(h, "orbit", ctx), n, ctx + " orbit");
      spec.simple_poles.push_back(sp);
    }
  }
  return spec;
}

QuiverSpec quiver(const json& q) {
  QuiverSpec spec;
  for (const auto& part : field(q, "partition", "quiver")) {
    if (!part.is_array() || part.empty()) throw InvalidInput("each part of the partition must be a nonempty array");
    std::vector<NodeId> nodes;
    for (const auto& n : part) nodes.push_back(text_of(n, "partition node"));
    spec.partition.push_back(nodes);
  }
  if (auto it = q.find("labels"); it != q.end())
    for (const auto& l : *it) spec.labels.push_back(text_of(l, "part label"));
  if (auto it = q.find("legs"); it != q.end()) {
    if (!it->is_object()) throw InvalidInput("\"legs\" must map nodes to leg node lists or lengths");
    for (const auto& [node, leg] : it->items()) {
      LegSpec ls;
      if (leg.is_number_integer()) {
        const int length = leg.get<int>();
        if (length < 0) throw InvalidInput("negative leg length at '" + node + "'");
        for (int k = 1; k <= length; ++k) ls.nodes.push_back(node + "." + std::to_string(k));
      } else {
        for (const auto& n : leg) ls.nodes.push_back(text_of(n, "leg node"));
      }
      spec.legs[node] = ls;
    }
  }
  for (const auto& [node, d] : field(q, "dims", "quiver").items()) spec.dims[node] = integer(d, "dimension of '" + node + "'");
  if (auto it = q.find("params"); it != q.end())
    for (const auto& [node, x] : it->items()) spec.params[node] = scalar(x, "parameter of '" + node + "'");
  return spec;
}

}  // namespace

QuiverData SpecFile::quiver_data() const {
  if (connection) return build_quiver(*connection);
  if (quiver) return build_quiver(*quiver);
  throw InvalidInput("empty specification");
}

SpecFile parse_spec(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + where(text, e.byte == 0 ? 0 : e.byte - 1) + " (byte " +
                     std::to_string(e.byte) + ")");
  }
  if (!root.is_object()) throw InvalidInput("spec must be a JSON object");
  SpecFile spec;
  if (auto it = root.find("name"); it != root.end()) spec.name = text_of(*it, "name");
  const bool has_conn = root.contains("poles") || root.contains("simple_poles");
  const bool has_quiver = root.contains("quiver");
  if (has_conn == has_quiver) throw InvalidInput("spec needs exactly one of the connection form and \"quiver\"");
  try {
    if (has_conn)
      spec.connection = connection(root);
    else
      spec.quiver = quiver(root["quiver"]);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("unexpected spec structure: ") + e.what());
  }
  return spec;
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace qc
