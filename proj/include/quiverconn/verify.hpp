#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "quiverconn/ij_calculus.hpp"
#include "quiverconn/report.hpp"
#include "quiverconn/spec_file.hpp"

namespace qc {

struct CheckResult {
  std::string name;
  bool passed = true;
  double residual = 0;   // worst over trials
  double tolerance = 0;
  int runs = 0;
  std::string detail;
};

struct VerifySummary {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  Json to_json() const;
  std::string to_text() const;
};

/// Relative trace-sum residual |Σ tr μ_i| / max(1, max |μ_i|_F).
double trace_sum_residual(const QuiverRep& rep);

/// dim 𝕍(Q) of the fission graph and Σ_i (k-1-i) dim h'_i computed from the tree.
std::pair<std::int64_t, std::int64_t> fission_dimension_count(const FissionTree& tree, int pole_order);

/// Hook applied to every generated quiver point before it is checked.
using PointHook = std::function<void(QuiverPoint&)>;

/// Invariant suite over `trials` seeded instances derived from the spec.
VerifySummary run_verification(const SpecFile& spec, std::uint64_t seed, int trials, const PointHook& hook = {});

}  // namespace qc
