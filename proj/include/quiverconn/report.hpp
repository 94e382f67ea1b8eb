#pragma once

#include <string>

#include <json.hpp>

#include "quiverconn/existence.hpp"
#include "quiverconn/spec_file.hpp"

namespace qc {

using Json = nlohmann::ordered_json;

/// spec -> (Γ, d, λ) -> root class, Δ, readings, existence verdict.
Json analyze_report(const SpecFile& spec, std::size_t state_limit = kDefaultStateLimit);
Json readings_report(const SpecFile& spec);
/// Applies a Weyl word (node ids, rightmost first) and re-analyses.
Json reflect_report(const SpecFile& spec, const std::string& word, std::size_t state_limit = kDefaultStateLimit);
std::string dot_report(const SpecFile& spec);

/// Plain-text renderings of the JSON reports.
std::string render_analyze(const Json& report);
std::string render_readings(const Json& report);
std::string render_reflect(const Json& report);

}  // namespace qc
