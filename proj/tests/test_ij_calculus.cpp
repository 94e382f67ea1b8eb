#include <doctest.h>

#include <random>

#include "quiverconn/errors.hpp"
#include "quiverconn/ij_calculus.hpp"

using namespace qc;

namespace {

ExactComplex q(const char* s) { return ExactComplex::parse(s); }

IJData data_of(std::vector<std::vector<NodeId>> parts, std::vector<NodeId> extra = {}) {
  IJData d;
  for (std::size_t j = 0; j < parts.size(); ++j) d.labels.push_back("J" + std::to_string(j + 1));
  d.parts = std::move(parts);
  d.extra = std::move(extra);
  return d;
}

RealizationData realization_for(const IJData& data, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RealizationData rd;
  for (std::size_t j = 0; j < data.labels.size(); ++j)
    rd.a[data.labels[j]] = ExactComplex(Rational(static_cast<long>(3 * j + 1)), Rational(static_cast<long>(rng() % 3)));
  long next = 0;
  for (const auto& p : data.parts)
    for (const auto& n : p) rd.b[n] = ExactComplex(Rational(next++), Rational(static_cast<long>(rng() % 2)));
  for (const auto& n : data.extra) rd.b[n] = ExactComplex(Rational(next++));
  return rd;
}

// x + u vᵀ with integer u, v: x is an eigenvalue and B - x has rank one.
ExactMatrix rank_one_shift(std::size_t n, const ExactComplex& x, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ExactMatrix b(n, n);
  std::vector<long> u(n), v(n);
  for (auto& e : u) e = static_cast<long>(rng() % 5) - 2;
  for (auto& e : v) e = static_cast<long>(rng() % 5) - 2;
  u[0] = 1;
  v[0] = 1;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) b(r, c) = ExactComplex(Rational(u[r] * v[c])) + (r == c ? x : ExactComplex(0));
  return b;
}

ExactMatrix scalar_matrix(std::size_t n, const ExactComplex& x) { return shifted(ExactMatrix(n, n), -x); }

double moment_fit(const QuiverPoint& pt) { return moment_residual(pt.rep, pt.lambda) / moment_scale(pt.rep); }

}  // namespace

TEST_CASE("IJ data validation") {
  CHECK_NOTHROW(data_of({{"a"}, {"b", "c"}}, {"r"}).validate());
  CHECK_THROWS_AS(data_of({}).validate(), InvalidInput);
  CHECK_THROWS_AS(data_of({{"a"}, {}}).validate(), InvalidInput);
  CHECK_THROWS_AS(data_of({{"a"}, {"a"}}).validate(), InvalidInput);
  CHECK_THROWS_AS(data_of({{"a"}}, {"a"}).validate(), InvalidInput);
  IJData dup = data_of({{"a"}, {"b"}});
  dup.labels = {"x", "x"};
  CHECK_THROWS_AS(dup.validate(), InvalidInput);
  CHECK(data_of({{"a"}}).is_complete());
  CHECK_FALSE(data_of({{"a"}}, {"r"}).is_complete());
}

TEST_CASE("realization of complete bipartite data") {
  IJRep rep;
  rep.data = data_of({{"u"}, {"v"}});
  rep.data.labels = {"0", "1"};
  rep.dims = {{"u", 1}, {"v", 1}};
  rep.alpha = ExactMatrix(2, 2);
  rep.alpha(0, 1) = q("2");  // P : W_1 -> W_0
  rep.alpha(1, 0) = q("5");  // Q : W_0 -> W_1
  RealizationData rd;
  rd.a = {{"0", q("1")}, {"1", q("4")}};
  rd.b = {{"u", q("7")}, {"v", q("-1")}};
  const ConnectionMatrices cm = realize(rep, rd);
  // B = [[A^(0), cP], [-Q, A^(1)]], c = a_1 - a_0.
  CHECK(cm.b(0, 0) == q("7"));
  CHECK(cm.b(0, 1) == q("6"));
  CHECK(cm.b(1, 0) == q("-5"));
  CHECK(cm.b(1, 1) == q("-1"));
  CHECK(cm.a0(1, 1) == q("4"));
  CHECK(cm.residues.empty());
  CHECK(cm.minimal_pole_order == 3);

  rd.a["1"] = q("1");
  CHECK_THROWS_AS(realize(rep, rd), InvalidInput);
}

TEST_CASE("realize and from_connection are inverse") {
  const std::vector<std::pair<IJData, std::map<NodeId, int>>> cases = {
      {data_of({{"a"}, {"b"}, {"c"}}), {{"a", 1}, {"b", 1}, {"c", 1}}},
      {data_of({{"a", "b"}, {"c"}}, {"r"}), {{"a", 2}, {"b", 1}, {"c", 2}}},
      {data_of({{"x"}, {"y", "z"}, {"w"}, {"t"}}), {{"x", 1}, {"y", 1}, {"z", 2}, {"w", 1}, {"t", 3}}},
  };
  for (std::uint64_t seed = 0; seed < 6; ++seed)
    for (const auto& [data, dims] : cases) {
      const IJRep rep = random_ijrep(data, dims, seed);
      const RealizationData rd = realization_for(data, seed);
      const auto [back, back_rd] = from_connection(realize(rep, rd));
      CHECK(back == rep);
      CHECK(back_rd == rd);
    }
}

TEST_CASE("from_connection without a layout finds the grading") {
  // Rank two, A0 regular semisimple, one simple pole.
  ConnectionMatrices cm;
  cm.a0 = ExactMatrix(2, 2);
  cm.a0(0, 0) = q("3");
  cm.a0(1, 1) = q("1");
  cm.a1 = ExactMatrix(2, 2);
  cm.a1(0, 0) = q("1/2");
  cm.a1(1, 1) = q("-2");
  cm.b = cm.a1;
  cm.b(0, 1) = q("4");
  cm.b(1, 0) = q("i");
  ExactMatrix res(2, 2);
  res(0, 0) = q("1"), res(0, 1) = q("2"), res(1, 0) = q("3"), res(1, 1) = q("4");
  cm.residues.push_back({"r", q("0"), res});
  const auto [rep, rd] = from_connection(cm);
  CHECK(rep.data.parts.size() == 2);
  CHECK(rep.data.parts[0].size() == 1);
  CHECK(rep.data.parts[1].size() == 1);
  CHECK(rep.data.extra == std::vector<NodeId>{"r"});
  // Parts come out ordered by A0-eigenvalue: 1 first.
  CHECK(rd.a.at(rep.data.labels[0]) == q("1"));
  CHECK(rd.b.at(rep.data.parts[0][0]) == q("-2"));
  // The off-diagonal entry 4 sits above the diagonal in the original basis,
  // hence below it after reordering, where it carries a minus sign.
  CHECK(rep.alpha(1, 0) == q("-4"));
  CHECK(rep.alpha(0, 1) == q("i") / (q("3") - q("1")));

  // Not simultaneously diagonalizable over the rationals.
  ConnectionMatrices bad = cm;
  bad.a0(0, 1) = q("2");
  bad.a0(1, 0) = q("1");
  bad.a0(0, 0) = q("0");
  bad.a0(1, 1) = q("0");
  bad.a1 = ExactMatrix(2, 2);
  bad.b = bad.a1;
  CHECK_THROWS_AS(from_connection(bad), InvalidInput);
}

TEST_CASE("completion and incompletion") {
  const IJData data = data_of({{"a"}, {"b"}}, {"r"});
  const std::map<NodeId, int> dims{{"a", 1}, {"b", 1}};
  IJRep rep = random_ijrep(data, dims, 3);

  SUBCASE("proper twist gives the triangle") {
    rep.residues["r"] = rank_one_shift(2, q("3/2"), 4);
    const Twist x{{"r", q("3/2")}};
    CHECK(is_proper_twist(rep, x));
    CHECK_FALSE(is_proper_twist(rep, Twist{{"r", q("100")}}));
    const IJRep full = complete(rep, x);
    CHECK(full.data.is_complete());
    CHECK(full.data.labels.front() == "0");
    CHECK(full.data.parts.front() == std::vector<NodeId>{"r"});
    CHECK(full.dims.at("r") == 1);
    CHECK(incomplete(full, x) == rep);
    const QuiverRep central = central_rep(full);
    CHECK(central.quiver.graph().edge_count() == 3);
    CHECK(central.dims == DimVector{1, 1, 1});
  }
  SUBCASE("improper twist keeps the full residue") {
    const Twist x{{"r", q("1/3+i")}};
    const IJRep full = complete(rep, x);
    CHECK(full.dims.at("r") == 2);
    CHECK(incomplete(full, x) == rep);
  }
  SUBCASE("a different twist shifts the residue by a scalar") {
    const IJRep full = complete(rep, Twist{{"r", q("2")}});
    const IJRep other = incomplete(full, Twist{{"r", q("5")}});
    ExactMatrix diff = other.residues.at("r") - rep.residues.at("r");
    CHECK(diff == scalar_matrix(2, q("3")));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(complete(rep, Twist{}), InvalidInput);
    CHECK_THROWS_AS(complete(rep, Twist{{"r", q("0")}}, "J1"), InvalidInput);
    CHECK_THROWS_AS(cycle(rep), InvalidInput);
    CHECK_THROWS_AS(check_B(rep, "a"), InvalidInput);
    const IJRep full = complete(rep, Twist{{"r", q("0")}});
    CHECK(complete(full, Twist{}) == full);
    CHECK_THROWS_AS(incomplete(full, Twist{}), InvalidInput);
  }
}

TEST_CASE("cycling has order 2k and preserves check-B") {
  const std::vector<std::pair<IJData, std::map<NodeId, int>>> cases = {
      {data_of({{"a"}}), {{"a", 2}}},
      {data_of({{"a"}, {"b"}}), {{"a", 1}, {"b", 2}}},
      {data_of({{"a"}, {"b"}, {"c"}}), {{"a", 1}, {"b", 1}, {"c", 1}}},
      {data_of({{"a", "b"}, {"c"}, {"d"}, {"e", "f"}}), {{"a", 1}, {"b", 1}, {"c", 2}, {"d", 1}, {"e", 1}, {"f", 1}}},
  };
  for (const auto& [data, dims] : cases) {
    const IJRep rep = random_ijrep(data, dims, 17);
    const std::size_t k = data.parts.size();
    IJRep r = rep;
    for (std::size_t t = 0; t < 2 * k; ++t) {
      r = cycle(r);
      for (const auto& [node, d] : dims) CHECK(check_B(r, node) == check_B(rep, node));
      if (t + 1 == k && k >= 2) {
        CHECK(r.data == rep.data);
        CHECK_FALSE(r == rep);  // signs have flipped once on every off-diagonal block
        CHECK(r.alpha == rep.alpha.scaled(q("-1")));
      }
    }
    CHECK(r == rep);
  }
}

TEST_CASE("check-B on the triangle") {
  IJRep rep;
  rep.data = data_of({{"a"}, {"b"}, {"c"}});
  rep.dims = {{"a", 1}, {"b", 1}, {"c", 1}};
  rep.alpha = ExactMatrix(3, 3);
  long v = 1;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      if (r != c) rep.alpha(r, c) = ExactComplex(Rational(v++));
  // ˇB_b = -α_ba α_ab + α_bc α_cb.
  CHECK(check_B(rep, "b") == scalar_matrix(1, q("-3") * q("1") + q("4") * q("6")));
  // The ˇB_i account for Σ tr: Σ_i tr ˇB_i = 0.
  ExactComplex total(0);
  for (const auto& n : {"a", "b", "c"}) total += check_B(rep, n)(0, 0);
  CHECK(total.is_zero());
  CHECK_THROWS_AS(check_B(rep, "zz"), InvalidInput);
}

TEST_CASE("minimal polynomial roots") {
  ExactMatrix d(3, 3);
  d(0, 0) = q("1"), d(1, 1) = q("2"), d(2, 2) = q("2");
  auto roots = minimal_polynomial_roots(d);
  CHECK(roots.exact);
  CHECK(roots.roots == std::vector<ExactComplex>{q("1"), q("2")});

  ExactMatrix j(3, 3);
  j(0, 0) = q("3"), j(1, 1) = q("3"), j(2, 2) = q("3"), j(0, 1) = q("1");
  CHECK(minimal_polynomial_roots(j).roots == std::vector<ExactComplex>{q("3"), q("3")});

  ExactMatrix nil(3, 3);
  nil(0, 1) = q("1"), nil(1, 2) = q("1");
  CHECK(minimal_polynomial_roots(nil).roots == std::vector<ExactComplex>(3, q("0")));

  ExactMatrix rot(2, 2);
  rot(0, 1) = q("-1"), rot(1, 0) = q("1");
  roots = minimal_polynomial_roots(rot);
  CHECK(roots.exact);
  CHECK(roots.roots == std::vector<ExactComplex>{q("-i"), q("i")});

  ExactMatrix sqrt2(2, 2);
  sqrt2(0, 1) = q("2"), sqrt2(1, 0) = q("1");
  roots = minimal_polynomial_roots(sqrt2);
  CHECK_FALSE(roots.exact);
  REQUIRE(roots.roots.size() == 2);
  CHECK(std::abs(std::abs(roots.roots[0].to_complex()) - std::sqrt(2.0)) < 1e-12);

  CHECK(minimal_polynomial_roots(ExactMatrix(0, 0)).roots.empty());
}

TEST_CASE("quiver points lie in the moment-map fibre") {
  SUBCASE("triangle, legs of length zero") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const IJRep rep = random_ijrep(data_of({{"a"}, {"b"}, {"c"}}), {{"a", 1}, {"b", 1}, {"c", 1}}, seed);
      const QuiverPoint pt = to_quiver_point(rep);
      CHECK(pt.quiver.graph().size() == 3);
      CHECK(pt.quiver.graph().edge_count() == 3);
      CHECK(pt.dims == DimVector{1, 1, 1});
      CHECK(moment_fit(pt) < 1e-8);
      CHECK(pairing(pt.dims, pt.lambda).is_zero());
    }
  }
  SUBCASE("legs from two-dimensional nodes") {
    const IJData data = data_of({{"a", "b"}, {"c"}, {"d"}});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const IJRep rep = random_ijrep(data, {{"a", 2}, {"b", 1}, {"c", 2}, {"d", 1}}, seed);
      const QuiverPoint pt = to_quiver_point(rep);
      CHECK(moment_fit(pt) < 1e-8);
      CHECK(std::abs(pairing(pt.dims, pt.lambda).to_complex()) < 1e-8);
      for (const auto& [node, names] : pt.legs) {
        CHECK(names.size() + 1 == pt.roots.at(node).size());
        CHECK(pt.quiver.graph().multiplicity(node, names.front()) == 1);
      }
    }
  }
  SUBCASE("orderings permute the leg parameters") {
    IJRep rep;
    rep.data = data_of({{"a"}, {"b"}});
    rep.dims = {{"a", 2}, {"b", 1}};
    rep.alpha = ExactMatrix(3, 3);
    // α_ab = (1, 0)ᵀ and α_ba = (2, 0), so ˇB_a = diag(2, 0).
    rep.alpha(0, 2) = q("1");
    rep.alpha(2, 0) = q("2");
    const auto roots = minimal_polynomial_roots(check_B(rep, "a"));
    REQUIRE(roots.exact);
    CHECK(roots.roots == std::vector<ExactComplex>{q("0"), q("2")});
    const QuiverPoint def = to_quiver_point(rep);
    const QuiverPoint swapped = to_quiver_point(rep, {{"a", {q("2"), q("0")}}});
    const auto ia = def.quiver.graph().index_of("a");
    CHECK(def.lambda[ia] == q("0"));
    CHECK(swapped.lambda[ia] == q("-2"));
    CHECK(moment_fit(swapped) < 1e-8);
    CHECK_THROWS_AS(to_quiver_point(rep, {{"a", {q("1"), q("3")}}}), InvalidInput);
  }
}

TEST_CASE("readings") {
  SUBCASE("tetrahedron") {
    const auto r = enumerate_readings(data_of({{"1"}, {"2"}, {"3"}, {"4"}}), {{"1", 1}, {"2", 2}, {"3", 3}, {"4", 4}});
    REQUIRE(r.size() == 5);
    std::vector<std::int64_t> ranks;
    for (const auto& x : r) ranks.push_back(x.bundle_rank);
    CHECK(ranks == std::vector<std::int64_t>{10, 9, 8, 7, 6});
    CHECK_FALSE(r[0].removed_part.has_value());
    CHECK(*r[4].removed_part == "J4");
  }
  SUBCASE("Γ(2,2,1)") {
    const auto r = enumerate_readings(data_of({{"a", "b"}, {"c", "d"}, {"e"}}),
                                      {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", 1}});
    REQUIRE(r.size() == 4);
    CHECK(r[0].pole_orders == std::vector<int>{3});
    CHECK(r[1].pole_orders == std::vector<int>{3, 1, 1});
    CHECK(r[2].pole_orders == std::vector<int>{3, 1, 1});
    CHECK(r[3].pole_orders == std::vector<int>{3, 1});
    CHECK(r[1].simple_pole_count == 2);
    CHECK(r[1].roles.at("a") == "simple pole");
    CHECK(r[1].roles.at("c") == "centre");
  }
  SUBCASE("Γ(p,q)") {
    const auto r = enumerate_readings(data_of({{"a", "b", "c"}, {"d", "e"}}),
                                      {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 2}, {"e", 1}});
    REQUIRE(r.size() == 3);
    CHECK(r[1].pole_orders == std::vector<int>{2, 1, 1, 1});
    CHECK(r[1].bundle_rank == 3);
    const auto single = enumerate_readings(data_of({{"a"}, {"b", "c"}}), {{"a", 1}, {"b", 1}, {"c", 1}});
    CHECK(single[2].pole_orders == std::vector<int>{1, 1, 1});
  }
  SUBCASE("a single part has only the principal reading") {
    const auto r = enumerate_readings(data_of({{"a", "b"}}), {{"a", 1}, {"b", 2}});
    REQUIRE(r.size() == 1);
    CHECK(r[0].pole_orders == std::vector<int>{2});
    CHECK(enumerate_readings(data_of({{"a"}}), {{"a", 3}})[0].pole_orders == std::vector<int>{1});
  }
  CHECK_THROWS_AS(enumerate_readings(data_of({{"a"}}, {"r"}), {{"a", 1}}), InvalidInput);
  CHECK_THROWS_AS(enumerate_readings(data_of({{"a"}}), {}), InvalidInput);
}

TEST_CASE("stability of IJ representations") {
  const IJData data = data_of({{"a"}, {"b"}}, {"r"});
  IJRep rep = random_ijrep(data, {{"a", 1}, {"b", 1}}, 8);
  rep.residues["r"] = rank_one_shift(2, q("0"), 9);
  const IJStability s = is_stable_ijrep(rep);
  CHECK(s.stable);
  CHECK(s.inconsistencies.empty());

  // With α = 0, a residue touching only V_a leaves V_b as a summand.
  IJRep lopsided = rep;
  lopsided.alpha = ExactMatrix(2, 2);
  lopsided.residues["r"] = ExactMatrix(2, 2);
  lopsided.residues["r"](0, 0) = q("1");
  CHECK_FALSE(is_stable_ijrep(lopsided).stable);
  // A zero residue contributes nothing, so α alone decides.
  IJRep bare = rep;
  bare.residues["r"] = ExactMatrix(2, 2);
  CHECK(is_stable_ijrep(bare).stable);
  bare.alpha = ExactMatrix(2, 2);
  CHECK_FALSE(is_stable_ijrep(bare).stable);

  const IJRep tri = random_ijrep(data_of({{"a"}, {"b"}, {"c"}}), {{"a", 1}, {"b", 1}, {"c", 1}}, 2);
  CHECK(is_stable_ijrep(tri).stable);
}

TEST_CASE("random IJ representations are seeded and graded") {
  const IJData data = data_of({{"a", "b"}, {"c"}}, {"r"});
  const std::map<NodeId, int> dims{{"a", 1}, {"b", 2}, {"c", 1}};
  const IJRep x = random_ijrep(data, dims, 1), y = random_ijrep(data, dims, 1), z = random_ijrep(data, dims, 2);
  CHECK(x == y);
  CHECK_FALSE(x == z);
  CHECK(x.alpha_block(0, 0).is_zero());
  CHECK(x.residues.at("r").rows() == 4);
  CHECK_THROWS_AS(random_ijrep(data, {{"a", 1}}, 1), InvalidInput);
}
