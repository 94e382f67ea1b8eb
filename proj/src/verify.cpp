#include "quiverconn/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "quiverconn/errors.hpp"

namespace qc {

namespace {

constexpr double kTraceTolerance = 1e-10;
constexpr double kCycleTolerance = 1e-10;
constexpr double kFibreTolerance = 1e-8;
constexpr std::size_t kMaxExactDim = 12;
// Parameters from numeric roots: repeated roots leave ~1e-16 differences.
constexpr double kZeroParamTolerance = 1e-8;

class Ledger {
 public:
  CheckResult& get(const std::string& name, double tolerance) {
    for (auto& c : checks_)
      if (c.name == name) return c;
    checks_.push_back({name, true, 0, tolerance, 0, ""});
    return checks_.back();
  }

  void record(const std::string& name, double tolerance, double residual, bool passed, const std::string& detail = "") {
    auto& c = get(name, tolerance);
    ++c.runs;
    c.residual = std::max(c.residual, residual);
    if (!passed) {
      c.passed = false;
      if (c.detail.empty()) c.detail = detail;
    }
  }

  void skip(const std::string& name, const std::string& why) {
    auto& c = get(name, 0);
    if (c.detail.empty()) c.detail = "skipped: " + why;
  }

  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  std::vector<CheckResult> checks_;
};

std::optional<FissionTree> tree_of(const SpecFile& spec, const QuiverData& q, int& order) {
  FissionTree t;
  std::vector<NodeId> level1, level2;
  const auto& dims = q.centre_dims();
  auto add_part = [&](const PartLabel& label, const std::vector<NodeId>& nodes) {
    const NodeId top = "J:" + label;
    level1.push_back(top);
    for (const auto& n : nodes) {
      level2.push_back(n);
      t.parent[n] = top;
      t.leaf_dims[n] = dims.at(n);
    }
  };
  if (spec.connection) {
    order = spec.connection->pole.order;
    if (order < 2) return std::nullopt;
    const auto& parts = spec.connection->pole.parts;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      std::vector<NodeId> ids;
      for (const auto& n : parts[j].nodes) ids.push_back(n.id);
      add_part(std::to_string(j), ids);
    }
  } else {
    order = 3;
    for (std::size_t j = 0; j < q.centre.parts.size(); ++j) add_part(q.centre.labels[j], q.centre.parts[j]);
  }
  for (const auto& [n, d] : t.leaf_dims)
    if (d <= 0) return std::nullopt;
  if (order == 2) {
    t.levels = {level2};
    t.parent.clear();
  } else {
    t.levels = {level1, level2};
  }
  return t;
}

}  // namespace

bool VerifySummary::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

Json VerifySummary::to_json() const {
  Json rows = Json::array();
  for (const auto& c : checks)
    rows.push_back({{"name", c.name},
                    {"passed", c.passed},
                    {"runs", c.runs},
                    {"residual", c.residual},
                    {"tolerance", c.tolerance},
                    {"detail", c.detail}});
  return {{"passed", all_passed()}, {"checks", rows}};
}

std::string VerifySummary::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-36s runs %-4d residual %.3e (tol %.0e)", c.passed ? "ok" : "FAIL",
                  c.name.c_str(), c.runs, c.residual, c.tolerance);
    out << line;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
  out << (checks.empty() ? "no checks run\n" : all_passed() ? "all checks passed\n" : "verification FAILED\n");
  return out.str();
}

double trace_sum_residual(const QuiverRep& rep) {
  const auto mu = moment_map(rep);
  double scale = 1;
  for (const auto& b : mu.blocks) scale = std::max(scale, b.norm());
  return std::abs(mu.trace_sum()) / scale;
}

std::pair<std::int64_t, std::int64_t> fission_dimension_count(const FissionTree& tree, int pole_order) {
  tree.validate();
  const Graph g = fission_graph(tree, pole_order);
  std::int64_t space = 0;
  for (const auto& [key, m] : g.edges())
    space += 2 * static_cast<std::int64_t>(m) * tree.leaf_dims.at(key.first) * tree.leaf_dims.at(key.second);
  std::int64_t formula = 0;
  for (int i = 1; i <= pole_order - 2; ++i) {
    const auto& level = tree.levels[static_cast<std::size_t>(i - 1)];
    const auto dims = tree.level_dims(static_cast<std::size_t>(i - 1));
    std::int64_t h = 0;  // dim h'_i: Hom between distinct siblings
    for (const auto& a : level)
      for (const auto& b : level) {
        if (a == b) continue;
        const bool siblings = i == 1 || tree.parent.at(a) == tree.parent.at(b);
        if (siblings) h += static_cast<std::int64_t>(dims.at(a)) * dims.at(b);
      }
    formula += (pole_order - 1 - i) * h;
  }
  return {space, formula};
}

VerifySummary run_verification(const SpecFile& spec, std::uint64_t seed, int trials, const PointHook& hook) {
  VerifySummary summary;
  if (trials <= 0) return summary;
  const QuiverData q = spec.quiver_data();
  const Quiver quiver = Quiver::canonical(q.graph);
  const RootSystem rs(q.graph);
  const auto centre_dims = q.centre_dims();
  std::size_t centre_total = 0;
  for (const auto& [n, d] : centre_dims) centre_total += static_cast<std::size_t>(d);
  const std::size_t l = q.centre.parts.size() - 1;
  Ledger ledger;

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    const double tr = trace_sum_residual(random_rep(quiver, q.dims, s));
    ledger.record("moment trace-sum", kTraceTolerance, tr, tr <= kTraceTolerance);

    if (centre_total == 0 || centre_total > kMaxExactDim) {
      const std::string why = "central dimension " + std::to_string(centre_total) + " outside 1.." + std::to_string(kMaxExactDim);
      for (const char* name : {"cycle order", "check-B cycling invariance", "complete/incomplete round trip",
                               "realize/from_connection round trip", "quiver point moment relations", "reflection functor"})
        ledger.skip(name, why);
      continue;
    }
    const IJRep rep = random_ijrep(q.centre, centre_dims, s);

    IJRep cycled = rep;
    for (std::size_t k = 0; k < 2 * l + 2; ++k) cycled = cycle(cycled);
    ledger.record("cycle order", 0, cycled == rep ? 0 : 1, cycled == rep, "cycle^(2l+2) differs from the identity");

    const IJRep once = cycle(rep);
    double worst = 0;
    for (const auto& [n, d] : centre_dims) worst = std::max(worst, frobenius_norm(check_B(rep, n) - check_B(once, n)));
    ledger.record("check-B cycling invariance", kCycleTolerance, worst, worst <= kCycleTolerance);

    if (q.centre.parts.size() >= 2) {
      Twist x, y;
      for (const auto& n : q.centre.parts[0]) {
        x[n] = ExactComplex(0);
        y[n] = ExactComplex(static_cast<long>(s % 5) - 2, 1);
      }
      const IJRep open = incomplete(rep, x);
      const bool same = incomplete(complete(open, y), y) == open;
      ledger.record("complete/incomplete round trip", 0, same ? 0 : 1, same, "round trip changed the representation");
    } else {
      ledger.skip("complete/incomplete round trip", "single part");
    }

    RealizationData rd;
    for (std::size_t j = 0; j < q.centre.parts.size(); ++j) {
      rd.a[q.centre.labels[j]] = ExactComplex(static_cast<long>(j));
      for (std::size_t k = 0; k < q.centre.parts[j].size(); ++k)
        rd.b[q.centre.parts[j][k]] = ExactComplex(static_cast<long>(k), static_cast<long>(j));
    }
    const auto back = from_connection(realize(rep, rd));
    const bool same = back.first == rep && back.second == rd;
    ledger.record("realize/from_connection round trip", 0, same ? 0 : 1, same, "round trip changed the data");

    QuiverPoint pt = to_quiver_point(rep);
    if (hook) hook(pt);
    const double fibre = moment_residual(pt.rep, pt.lambda) / moment_scale(pt.rep);
    ledger.record("quiver point moment relations", kFibreTolerance, fibre, fibre <= kFibreTolerance,
                  "point is off the moment-map fibre");

    const RootSystem prs(pt.quiver.graph());
    for (std::size_t i = 0; i < pt.dims.size(); ++i) {
      if (std::abs(pt.lambda[i].to_complex()) < kZeroParamTolerance) continue;
      try {
        const auto r = reflection_functor(pt.rep, pt.lambda, i);
        const double res = moment_residual(r.rep, r.lambda) / moment_scale(r.rep);
        const bool ok = r.rep.dims == prs.reflect(i, pt.dims) && r.lambda == prs.dual_reflect(i, pt.lambda) &&
                        res <= kFibreTolerance;
        ledger.record("reflection functor", kFibreTolerance, res, ok, "post-condition failed at node " + prs.nodes()[i]);
      } catch (const InvalidInput& e) {
        ledger.record("reflection functor", kFibreTolerance, 0, false, e.what());
      }
    }
  }

  int order = 3;
  if (const auto tree = tree_of(spec, q, order)) {
    const auto [space, formula] = fission_dimension_count(*tree, order);
    ledger.record("fission dimension count", 0, static_cast<double>(std::llabs(space - formula)), space == formula,
                  "dim V(Q) = " + std::to_string(space) + " but the stabilizer count gives " + std::to_string(formula));
  } else {
    ledger.skip("fission dimension count", "no higher order pole with positive dimensions");
  }
  summary.checks = ledger.take();
  return summary;
}

}  // namespace qc
