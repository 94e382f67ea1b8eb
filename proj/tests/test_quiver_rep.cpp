#include <doctest.h>

#include <random>

#include "quiverconn/errors.hpp"
#include "quiverconn/quiver_rep.hpp"

using namespace qc;

namespace {

ExactComplex z(long v) { return ExactComplex(Rational(v)); }

Quiver a2() {
  Graph g;
  g.add_node("a");
  g.add_node("b");
  g.add_edge("a", "b");
  return Quiver(g, {{"a", "b"}});
}

CMatrix scalar(std::complex<double> v) { return CMatrix::Constant(1, 1, v); }

CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> normal;
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = {normal(rng), normal(rng)};
  return m;
}

// Star-shaped point: two legs meeting at "c", built from A and cI - A with
// A diagonalisable with eigenvalues 1, 2, 3. Returns (rep, λ).
std::pair<QuiverRep, ParamVector> star_point(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CMatrix p = random_matrix(rng, 3, 3);
  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 3.0;
  const CMatrix a = p * d * p.inverse();
  const CMatrix b = 5.0 * CMatrix::Identity(3, 3) - a;  // eigenvalues 4, 3, 2
  const Leg la = leg_from_matrix(a, {z(1), z(2), z(3)});
  const Leg lb = leg_from_matrix(b, {z(2), z(3), z(4)});

  Graph g;
  for (const auto& n : {"c", "a1", "a2", "b1", "b2"}) g.add_node(n);
  g.add_edge("a1", "c");
  g.add_edge("a2", "a1");
  g.add_edge("b1", "c");
  g.add_edge("b2", "b1");
  QuiverRep rep{Quiver(g, {{"a1", "c"}, {"a2", "a1"}, {"b1", "c"}, {"b2", "b1"}}), DimVector{2, 1, 2, 1, 3}, {}, {}};
  rep.forward = {la.q[0], la.q[1], lb.q[0], lb.q[1]};
  rep.backward = {la.p[0], la.p[1], lb.p[0], lb.p[1]};
  rep.validate();
  // Node order a1, a2, b1, b2, c; μ_c = (A - 1) + (5 - A - 2) = 2.
  ParamVector lambda{la.params[1], la.params[2], lb.params[1], lb.params[2], z(2)};
  return {rep, lambda};
}

QuiverRep conjugate(const QuiverRep& rep, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CMatrix> g;
  for (std::size_t i = 0; i < rep.dims.size(); ++i)
    g.push_back(random_matrix(rng, static_cast<Eigen::Index>(rep.dims[i]), static_cast<Eigen::Index>(rep.dims[i])));
  QuiverRep out = rep;
  const auto& graph = rep.quiver.graph();
  for (std::size_t e = 0; e < rep.forward.size(); ++e) {
    const auto t = graph.index_of(rep.quiver.arrows()[e].tail), h = graph.index_of(rep.quiver.arrows()[e].head);
    out.forward[e] = g[h] * rep.forward[e] * g[t].inverse();
    out.backward[e] = g[t] * rep.backward[e] * g[h].inverse();
  }
  return out;
}

}  // namespace

TEST_CASE("moment map of a single arrow") {
  QuiverRep rep = QuiverRep::zero(a2(), DimVector{1, 1});
  rep.forward[0] = scalar(2);
  rep.backward[0] = scalar(3);
  const MomentValue mu = moment_map(rep);
  CHECK(mu.blocks[0](0, 0) == std::complex<double>(-6));
  CHECK(mu.blocks[1](0, 0) == std::complex<double>(6));
  CHECK(moment_residual(rep, ParamVector{z(-6), z(6)}) == doctest::Approx(0));
  CHECK(moment_residual(rep, ParamVector{z(-6), z(5)}) == doctest::Approx(1));
  CHECK(moment_scale(rep) == doctest::Approx(6));
}

TEST_CASE("the moment map has trace sum zero") {
  Graph g = attach_leg(complete_k_partite({{"2"}, {"3"}, {"4"}}), "2", std::vector<NodeId>{"1"});
  g.add_edge("3", "4");
  const Quiver q = Quiver::canonical(g);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const QuiverRep rep = random_rep(q, DimVector{1, 2, 2, 1}, seed);
    const double bound = 1e-10 * moment_scale(rep);
    CHECK(std::abs(moment_map(rep).trace_sum()) <= bound);
  }
}

TEST_CASE("representation shapes are validated") {
  QuiverRep rep = QuiverRep::zero(a2(), DimVector{1, 2});
  CHECK_NOTHROW(rep.validate());
  rep.forward[0] = CMatrix::Zero(1, 1);
  CHECK_THROWS_AS(rep.validate(), InvalidInput);
  CHECK_THROWS_AS(QuiverRep::zero(a2(), DimVector{1, -1}).validate(), InvalidInput);
}

TEST_CASE("orbit data") {
  OrbitSpec o{3, {z(1), z(2), z(3)}, {2, 1}};
  CHECK_NOTHROW(o.validate());
  CHECK(o.leg_dims() == std::vector<int>{3, 2, 1});
  CHECK(o.leg_params() == std::vector<ExactComplex>{z(-1), z(-1), z(-1)});
  CHECK(o.resonances().size() == 6);
  CHECK(OrbitSpec{2, {ExactComplex::parse("1/2"), ExactComplex::parse("i")}, {1}}.resonances().empty());
  CHECK_THROWS_AS((OrbitSpec{3, {z(1), z(2)}, {2, 1}}.validate()), InvalidInput);
  CHECK_THROWS_AS((OrbitSpec{3, {z(1), z(2), z(3)}, {1, 2}}.validate()), InvalidInput);
  CHECK_THROWS_AS((OrbitSpec{1, {z(1), z(2)}, {2}}.validate()), InvalidInput);
  CHECK_THROWS_AS((OrbitSpec{2, {z(1), z(1)}, {1}}.validate()), InvalidInput);
}

TEST_CASE("legs of a matrix") {
  SUBCASE("regular semisimple") {
    std::mt19937_64 rng(11);
    const CMatrix p = random_matrix(rng, 3, 3);
    CMatrix d = CMatrix::Zero(3, 3);
    d.diagonal() << 1.0, 2.0, 3.0;
    const CMatrix a = p * d * p.inverse();
    const Leg leg = leg_from_matrix(a, {z(1), z(2), z(3)});
    CHECK(leg.dims == std::vector<int>{3, 2, 1});
    CHECK(leg.params == std::vector<ExactComplex>{z(-1), z(-1), z(-1)});
    CHECK(leg.reconstruction_residual < 1e-9);
    // p_j q_j = q_{j+1} p_{j+1} + x_{j+1} - x_j, and p_l q_l = x_{l+1} - x_l.
    const CMatrix pq1 = leg.p[0] * leg.q[0], qp2 = leg.q[1] * leg.p[1];
    CHECK(max_abs(pq1 - qp2 - CMatrix::Identity(2, 2)) < 1e-9);
    CHECK(std::abs((leg.p[1] * leg.q[1])(0, 0) - std::complex<double>(1)) < 1e-9);

    const QuiverRep rep = leg.as_rep({"c", "c.1", "c.2"});
    const MomentValue mu = moment_map(rep);
    CHECK(max_abs(mu.blocks[0] - (a - CMatrix::Identity(3, 3))) < 1e-9);
    CHECK(max_abs(mu.blocks[1] - leg.params[1].to_complex() * CMatrix::Identity(2, 2)) < 1e-9);
    CHECK(max_abs(mu.blocks[2] - leg.params[2].to_complex() * CMatrix::Identity(1, 1)) < 1e-9);
  }
  SUBCASE("nilpotent Jordan block") {
    CMatrix j = CMatrix::Zero(3, 3);
    j(0, 1) = 1;
    j(1, 2) = 1;
    const Leg leg = leg_from_matrix(j, {z(0), z(0), z(0)});
    CHECK(leg.dims == std::vector<int>{3, 2, 1});
    CHECK(leg.reconstruction_residual < 1e-12);
    CHECK_THROWS_AS(leg_from_matrix(j, {z(0), z(0)}), InvalidInput);
  }
  SUBCASE("scalar matrix has no leg") {
    const Leg leg = leg_from_matrix(CMatrix::Identity(2, 2) * 4.0, {z(4)});
    CHECK(leg.dims == std::vector<int>{2});
    CHECK(leg.p.empty());
  }
  SUBCASE("a rank one projector") {
    CMatrix e = CMatrix::Zero(2, 2);
    e(0, 0) = 1;
    const Leg leg = leg_from_matrix(e, {z(0), z(1)});
    CHECK(leg.dims == std::vector<int>{2, 1});
    CHECK(leg.params == std::vector<ExactComplex>{z(0), z(-1)});
  }
}

TEST_CASE("reflection functor on a single arrow") {
  QuiverRep rep = QuiverRep::zero(a2(), DimVector{1, 1});
  rep.forward[0] = scalar(1);
  rep.backward[0] = scalar(2);
  const ParamVector lambda{z(-2), z(2)};
  const ReflectedRep r = reflection_functor(rep, lambda, 0);
  CHECK(r.rep.dims == DimVector{0, 1});
  CHECK(r.lambda == ParamVector{z(2), z(0)});
  CHECK(moment_residual(r.rep, r.lambda) < 1e-12);
  CHECK_THROWS_AS(reflection_functor(r.rep, r.lambda, 1), ReflectionUndefined);
  CHECK_THROWS_AS(reflection_functor(rep, ParamVector{z(-2), z(3)}, 0), InvalidInput);
}

TEST_CASE("reflection functor on a star") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto [rep, lambda] = star_point(seed);
    REQUIRE(moment_residual(rep, lambda) < 1e-9 * moment_scale(rep));
    const std::size_t c = rep.quiver.graph().index_of("c");
    const ReflectedRep once = reflection_functor(rep, lambda, c);
    CHECK(once.rep.dims == RootSystem(rep.quiver.graph()).reflect(c, rep.dims));
    CHECK(once.rep.dims[c] == 1);
    CHECK(moment_residual(once.rep, once.lambda) < 1e-8 * moment_scale(once.rep));

    const ReflectedRep twice = reflection_functor(once.rep, once.lambda, c);
    CHECK(twice.rep.dims == rep.dims);
    CHECK(twice.lambda == lambda);
    const auto before = trace_invariants(rep, 4, 99), after = trace_invariants(twice.rep, 4, 99);
    REQUIRE(before.size() == after.size());
    for (std::size_t k = 0; k < before.size(); ++k)
      CHECK(std::abs(before[k] - after[k]) <= 1e-7 * std::max(1.0, std::abs(before[k])));

    // Reflect at a leg node as well.
    const std::size_t a1 = rep.quiver.graph().index_of("a1");
    const ReflectedRep leg = reflection_functor(rep, lambda, a1);
    CHECK(leg.rep.dims[a1] == 3 + 1 - 2);
    CHECK(moment_residual(leg.rep, leg.lambda) < 1e-8 * moment_scale(leg.rep));
  }
}

TEST_CASE("stability") {
  SUBCASE("single arrow") {
    QuiverRep rep = QuiverRep::zero(a2(), DimVector{1, 1});
    CHECK_FALSE(is_stable(rep, 8, 1));
    rep.forward[0] = scalar(1);
    CHECK_FALSE(is_stable(rep, 8, 1));  // V_b is a subrepresentation
    rep.backward[0] = scalar(2);
    CHECK(is_stable(rep, 8, 1));
  }
  SUBCASE("vertex simples and trivial cases") {
    CHECK(is_stable(QuiverRep::zero(a2(), DimVector{1, 0}), 8, 1));
    CHECK_FALSE(is_stable(QuiverRep::zero(a2(), DimVector{2, 0}), 8, 1));
    CHECK_FALSE(is_stable(QuiverRep::zero(a2(), DimVector{0, 0}), 8, 1));
  }
  SUBCASE("generic points are simple") {
    Graph g = attach_leg(complete_k_partite({{"2"}, {"3"}, {"4"}}), "2", std::vector<NodeId>{"1"});
    const Quiver q = Quiver::canonical(g);
    for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(is_stable(random_rep(q, DimVector{1, 2, 2, 1}, seed), 8, seed));
  }
  SUBCASE("direct sums are not simple") {
    const Quiver q = Quiver::canonical(complete_k_partite({{"1"}, {"2"}, {"3"}}));
    QuiverRep a = random_rep(q, DimVector{1, 1, 1}, 3);
    QuiverRep sum = QuiverRep::zero(q, DimVector{2, 2, 2});
    const QuiverRep b = random_rep(q, DimVector{1, 1, 1}, 4);
    for (std::size_t e = 0; e < q.arrows().size(); ++e) {
      sum.forward[e](0, 0) = a.forward[e](0, 0);
      sum.forward[e](1, 1) = b.forward[e](0, 0);
      sum.backward[e](0, 0) = a.backward[e](0, 0);
      sum.backward[e](1, 1) = b.backward[e](0, 0);
    }
    CHECK_FALSE(is_stable(sum, 8, 5));
    // The pre-filter alone is disabled with zero trials; Burnside still decides.
    CHECK_FALSE(is_stable(sum, 0, 5));
    CHECK(is_stable(a, 0, 5));
  }
}

TEST_CASE("random representations are seeded") {
  const Quiver q = Quiver::canonical(complete_k_partite({{"1"}, {"2"}, {"3"}}));
  const QuiverRep a = random_rep(q, DimVector{1, 2, 1}, 42), b = random_rep(q, DimVector{1, 2, 1}, 42);
  const QuiverRep c = random_rep(q, DimVector{1, 2, 1}, 43);
  CHECK(a.forward == b.forward);
  CHECK(a.backward == b.backward);
  CHECK(a.forward != c.forward);
}

TEST_CASE("trace invariants are GL invariant") {
  const auto [rep, lambda] = star_point(21);
  const QuiverRep moved = conjugate(rep, 8);
  const auto x = trace_invariants(rep, 5, 3), y = trace_invariants(moved, 5, 3);
  REQUIRE(x.size() == 4 + 5 * 5 * 3);
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(x[k] - y[k]) <= 1e-7 * std::max(1.0, std::abs(x[k])));
  // The star data is rigid, so a second seed gives an isomorphic point.
  const auto same = trace_invariants(star_point(22).first, 5, 3);
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(x[k] - same[k]) <= 1e-7 * std::max(1.0, std::abs(x[k])));
  // Non-isomorphic points are told apart.
  const auto other = trace_invariants(random_rep(rep.quiver, rep.dims, 5), 5, 3);
  double gap = 0;
  for (std::size_t k = 0; k < x.size(); ++k) gap = std::max(gap, std::abs(x[k] - other[k]));
  CHECK(gap > 1e-3);
}
