#include "quiverconn/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

Json dims_json(const DimVector& d) {
  Json out = Json::array();
  for (auto x : d.coords()) out.push_back(x);
  return out;
}

Json params_json(const ParamVector& p) {
  Json out = Json::array();
  for (const auto& x : p.coords()) out.push_back(x.to_string());
  return out;
}

Json decomposition_json(const Decomposition& parts) {
  Json out = Json::array();
  for (const auto& b : parts) out.push_back(dims_json(b));
  return out;
}

std::map<NodeId, std::string> roles(const QuiverData& q) {
  std::map<NodeId, std::string> out;
  for (std::size_t j = 0; j < q.centre.parts.size(); ++j)
    for (const auto& n : q.centre.parts[j]) out[n] = "part " + q.centre.labels[j];
  for (const auto& [node, leg] : q.legs)
    for (const auto& n : leg) out[n] = "leg of " + node;
  return out;
}

Json graph_json(const QuiverData& q) {
  const auto role = roles(q);
  Json nodes = Json::array();
  const auto& ids = q.graph.nodes();
  for (std::size_t k = 0; k < ids.size(); ++k)
    nodes.push_back({{"id", ids[k]}, {"dim", q.dims[k]}, {"param", q.lambda[k].to_string()}, {"role", role.at(ids[k])}});
  Json edges = Json::array();
  for (const auto& [key, m] : q.graph.edges()) edges.push_back({{"a", key.first}, {"b", key.second}, {"multiplicity", m}});
  return {{"nodes", nodes}, {"edges", edges}};
}

Json word_json(const RootSystem& rs, const WeylWord& w) {
  Json out = Json::array();
  for (auto i : w) out.push_back(rs.nodes()[i]);
  return out;
}

Json root_json(const RootSystem& rs, const DimVector& d) {
  const auto rc = rs.classify(d);
  return {{"kind", to_string(rc.kind)}, {"witness", word_json(rs, rc.witness)}};
}

Json existence_json(const ExistenceVerdict& v) {
  return {{"nonempty", v.nonempty},
          {"witness", decomposition_json(v.witness)},
          {"nonempty_reason", v.nonempty_reason},
          {"stable", v.stable},
          {"violation", decomposition_json(v.violation)},
          {"stable_reason", v.stable_reason}};
}

Json readings_json(const QuiverData& q) {
  Json rows = Json::array();
  for (const auto& r : enumerate_readings(q.centre, q.centre_dims())) {
    Json removed_nodes = Json::array();
    if (r.removed_part) {
      const auto& labels = q.centre.labels;
      const auto j = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), *r.removed_part) - labels.begin());
      for (const auto& n : q.centre.parts[j]) removed_nodes.push_back(n);
    }
    rows.push_back({{"removed_part", r.removed_part ? Json(*r.removed_part) : Json(nullptr)},
                    {"removed_nodes", removed_nodes},
                    {"rank", r.bundle_rank},
                    {"pole_orders", r.pole_orders},
                    {"simple_poles", r.simple_pole_count}});
  }
  return rows;
}

Json analysis_json(const QuiverData& q, const DimVector& d, const ParamVector& lambda, std::size_t limit) {
  const RootSystem rs(q.graph);
  return {{"dims", dims_json(d)},
          {"params", params_json(lambda)},
          {"lambda_dot_d", pairing(d, lambda).to_string()},
          {"root", root_json(rs, d)},
          {"delta", rs.delta(d)},
          {"existence", existence_json(existence(q.graph, d, lambda, limit))}};
}

std::string list_text(const Json& arr) {
  std::string out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out += k ? " " : "";
    out += arr[k].is_string() ? arr[k].get<std::string>() : arr[k].dump();
  }
  return out;
}

std::string tuple_text(const Json& arr) {
  std::string out = "(";
  for (std::size_t k = 0; k < arr.size(); ++k) out += (k ? "," : "") + (arr[k].is_string() ? arr[k].get<std::string>() : arr[k].dump());
  return out + ")";
}

std::string decomposition_text(const Json& parts) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? " + " : "") + tuple_text(parts[k]);
  return out.empty() ? "-" : out;
}

void render_analysis(std::ostringstream& out, const Json& a) {
  out << "dims: " << tuple_text(a["dims"]) << "\n";
  out << "params: " << tuple_text(a["params"]) << "\n";
  out << "lambda.d: " << a["lambda_dot_d"].get<std::string>() << "\n";
  out << "root: " << a["root"]["kind"].get<std::string>();
  if (!a["root"]["witness"].empty()) out << " (witness " << list_text(a["root"]["witness"]) << ")";
  out << "\n";
  out << "delta: " << a["delta"].dump() << "\n";
  const Json& e = a["existence"];
  out << "nonempty: " << (e["nonempty"].get<bool>() ? "yes" : "no") << " - " << e["nonempty_reason"].get<std::string>();
  if (e["nonempty"].get<bool>()) out << " [" << decomposition_text(e["witness"]) << "]";
  out << "\n";
  out << "stable: " << (e["stable"].get<bool>() ? "yes" : "no") << " - " << e["stable_reason"].get<std::string>();
  if (!e["violation"].empty()) out << " [" << decomposition_text(e["violation"]) << "]";
  out << "\n";
}

void render_readings_table(std::ostringstream& out, const Json& rows) {
  out << "removed part      rank  pole orders    simple poles\n";
  for (const auto& r : rows) {
    std::string removed = r["removed_part"].is_null() ? "(principal)" : r["removed_part"].get<std::string>();
    std::string orders;
    for (std::size_t k = 0; k < r["pole_orders"].size(); ++k) orders += (k ? "+" : "") + r["pole_orders"][k].dump();
    char line[160];
    std::snprintf(line, sizeof line, "%-17s %-5s %-14s %s\n", removed.c_str(), r["rank"].dump().c_str(), orders.c_str(),
                  r["simple_poles"].dump().c_str());
    out << line;
  }
}

}  // namespace

Json analyze_report(const SpecFile& spec, std::size_t state_limit) {
  const QuiverData q = spec.quiver_data();
  Json out;
  out["name"] = spec.name;
  out["form"] = spec.connection ? "connection" : "quiver";
  out["graph"] = graph_json(q);
  Json centre = Json::array();
  for (std::size_t j = 0; j < q.centre.parts.size(); ++j)
    centre.push_back({{"label", q.centre.labels[j]}, {"nodes", q.centre.parts[j]}});
  out["centre"] = centre;
  out["analysis"] = analysis_json(q, q.dims, q.lambda, state_limit);
  out["readings"] = readings_json(q);
  out["warnings"] = q.warnings;
  return out;
}

Json readings_report(const SpecFile& spec) {
  const QuiverData q = spec.quiver_data();
  return {{"name", spec.name}, {"readings", readings_json(q)}};
}

Json reflect_report(const SpecFile& spec, const std::string& word, std::size_t state_limit) {
  const QuiverData q = spec.quiver_data();
  const RootSystem rs(q.graph);
  const WeylWord w = rs.parse_word(word);
  const WeylAction act = rs.apply_word(w, q.dims, q.lambda);
  Json zero = Json::array();
  for (auto i : act.zero_parameter_steps) zero.push_back(rs.nodes()[i]);
  Json out;
  out["name"] = spec.name;
  out["nodes"] = rs.nodes();
  out["word"] = word_json(rs, w);
  out["before"] = {{"dims", dims_json(q.dims)}, {"params", params_json(q.lambda)}};
  out["after"] = {{"dims", dims_json(act.beta)}, {"params", params_json(act.lambda)}};
  out["zero_parameter_steps"] = zero;
  out["analysis"] = analysis_json(q, act.beta, act.lambda, state_limit);
  return out;
}

std::string dot_report(const SpecFile& spec) {
  const QuiverData q = spec.quiver_data();
  const auto role = roles(q);
  std::map<NodeId, std::string> comments;
  const auto& ids = q.graph.nodes();
  for (std::size_t k = 0; k < ids.size(); ++k) comments[ids[k]] = role.at(ids[k]) + ", dim " + std::to_string(q.dims[k]);
  return to_dot(q.graph, comments);
}

std::string render_analyze(const Json& r) {
  std::ostringstream out;
  if (!r["name"].get<std::string>().empty()) out << "spec: " << r["name"].get<std::string>() << "\n";
  out << "nodes: " << r["graph"]["nodes"].size() << ", edges: ";
  int edges = 0;
  for (const auto& e : r["graph"]["edges"]) edges += e["multiplicity"].get<int>();
  out << edges << "\n";
  for (const auto& n : r["graph"]["nodes"])
    out << "  " << n["id"].get<std::string>() << "  dim " << n["dim"].dump() << "  param " << n["param"].get<std::string>()
        << "  " << n["role"].get<std::string>() << "\n";
  render_analysis(out, r["analysis"]);
  out << "readings:\n";
  render_readings_table(out, r["readings"]);
  for (const auto& w : r["warnings"]) out << "warning: " << w.get<std::string>() << "\n";
  return out.str();
}

std::string render_readings(const Json& r) {
  std::ostringstream out;
  render_readings_table(out, r["readings"]);
  return out.str();
}

std::string render_reflect(const Json& r) {
  std::ostringstream out;
  out << "nodes: " << list_text(r["nodes"]) << "\n";
  out << "word: " << (r["word"].empty() ? "(empty)" : list_text(r["word"])) << "\n";
  out << "before: " << tuple_text(r["before"]["dims"]) << " " << tuple_text(r["before"]["params"]) << "\n";
  out << "after:  " << tuple_text(r["after"]["dims"]) << " " << tuple_text(r["after"]["params"]) << "\n";
  if (!r["zero_parameter_steps"].empty())
    out << "warning: reflected where the parameter vanishes at " << list_text(r["zero_parameter_steps"]) << "\n";
  render_analysis(out, r["analysis"]);
  return out.str();
}

}  // namespace qc
