#include <doctest.h>

#include <cmath>
#include <numbers>

#include "amoeba/errors.hpp"
#include "amoeba/exposum.hpp"
#include "amoeba/simplex.hpp"
#include "support.hpp"

using namespace amoeba;
using testing::iv;

namespace {

ExponentialSum one_dim(std::vector<std::pair<IntVector, Complex>> terms) {
  std::vector<Term> t;
  for (auto& [e, c] : terms) t.push_back({e, c});
  return ExponentialSum({{std::sqrt(2.0)}, {std::sqrt(5.0)}}, t);
}

}  // namespace

TEST_CASE("spectrum and evaluation") {
  const ExponentialSum f = one_dim({{iv({0, 0}), 1.0}, {iv({1, 0}), 3.0}, {iv({0, 1}), 1.0}});
  CHECK(f.dim() == 1);
  CHECK(f.spectrum()[1][0] == doctest::Approx(std::sqrt(2.0)));
  const double x = 0.3;
  const double expected = 1 + 3 * std::exp(std::sqrt(2.0) * x) + std::exp(std::sqrt(5.0) * x);
  CHECK(f.evaluate({x}).real() == doctest::Approx(expected));
}

TEST_CASE("invalid sums are rejected") {
  CHECK_THROWS_AS(one_dim({}), Error);
  CHECK_THROWS_AS(one_dim({{iv({0, 0}), 0.0}}), Error);
  CHECK_THROWS_AS(one_dim({{iv({0, 0}), 1.0}, {iv({0, 0}), 2.0}}), Error);
  CHECK_THROWS_AS(one_dim({{iv({0, 0, 1}), 1.0}}), Error);
}

TEST_CASE("perturbed evaluation") {
  const ExponentialSum f = one_dim({{iv({0, 0}), 1.0}, {iv({1, 0}), 3.0}, {iv({0, 1}), 1.0}});
  const LatticeIso iso = build_iso(f.exponent_matrix(), f.generators());
  // Trivial character gives f back.
  CHECK(std::abs(evaluate_perturbed(f, iso, {0.4}, TorusPoint::zero(2)) - f.evaluate({0.4})) < 1e-12);
  // chi(omega_1) = -1 flips the sign of the middle term: 1 - 3 + 1 at x = 0.
  const Complex v = evaluate_perturbed(f, iso, {0.0}, TorusPoint({std::numbers::pi, 0.0}));
  CHECK(v.real() == doctest::Approx(-1.0));
  CHECK(std::abs(v.imag()) < 1e-12);
  // Angles are reduced into [0, 2pi).
  const TorusPoint t({-std::numbers::pi / 2, 7.0});
  CHECK(t.theta[0] == doctest::Approx(1.5 * std::numbers::pi));
  CHECK(t.theta[1] == doctest::Approx(7.0 - 2 * std::numbers::pi));
}

TEST_CASE("newton vertices") {
  // On the line every spectrum has exactly its two extreme frequencies as vertices.
  const ExponentialSum f = one_dim({{iv({0, 0}), 1.0}, {iv({1, 0}), 3.0}, {iv({0, 1}), 1.0}});
  CHECK(newton_vertices(f) == std::vector<std::size_t>{0, 2});

  // Square with centre point in the plane.
  std::vector<Term> t{{iv({0, 0}), 1.0}, {iv({1, 0}), 1.0}, {iv({0, 1}), 1.0}, {iv({1, 1}), 1.0}, {iv({2, 2}), 1.0}};
  const ExponentialSum g({{1.0, 0.0}, {0.0, 1.0}}, t);
  CHECK(newton_vertices(g) == std::vector<std::size_t>{0, 1, 2, 4});

  for (const VertexWitness& w : newton_vertex_witnesses(g)) {
    CHECK(w.margin > 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (i != w.index)
        CHECK(dot(w.direction, g.spectrum()[w.index]) - dot(w.direction, g.spectrum()[i]) >= w.margin - 1e-9);
  }

  const ExponentialSum mono = one_dim({{iv({2, 1}), Complex(0.0, 1.0)}});
  CHECK(newton_vertices(mono) == std::vector<std::size_t>{0});
}

TEST_CASE("maximal sparseness") {
  // 1 + e^z + e^{sqrt2 z}: the middle frequency is not a vertex.
  const ExponentialSum f({{1.0}, {std::sqrt(2.0)}}, {{iv({0, 0}), 1.0}, {iv({1, 0}), 1.0}, {iv({0, 1}), 1.0}});
  CHECK_FALSE(is_maximally_sparse(f));
  const ExponentialSum g({{1.0}, {std::sqrt(2.0)}}, {{iv({0, 0}), 1.0}, {iv({0, 1}), 1.0}});
  CHECK(is_maximally_sparse(g));
}

TEST_CASE("monomial shift") {
  const ExponentialSum f = one_dim({{iv({0, 0}), 1.0}, {iv({1, 0}), 3.0}});
  const ExponentialSum g = f.shifted_by(iv({2, -1}));
  CHECK(g.terms()[0].exponent == iv({2, -1}));
  CHECK(g.terms()[1].exponent == iv({3, -1}));
  const double x = 0.7;
  const double factor = std::exp(x * (2 * std::sqrt(2.0) - std::sqrt(5.0)));
  CHECK(std::abs(g.evaluate({x}) - factor * f.evaluate({x})) < 1e-9);
}

TEST_CASE("convex hull membership") {
  const std::vector<RealVector> tri{{0, 0}, {1, 0}, {0, 1}};
  CHECK(in_convex_hull(tri, {0.25, 0.25}));
  CHECK(in_convex_hull(tri, {0.5, 0.5}));
  CHECK_FALSE(in_convex_hull(tri, {0.6, 0.6}));
}

TEST_CASE("simplex") {
  using namespace amoeba::lp;
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6.
  const Solution s = maximize({1, 1}, {{{1, 2}, Relation::LessEqual, 4}, {{3, 1}, Relation::LessEqual, 6}});
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == doctest::Approx(2.8));
  CHECK(maximize({1}, {{{1}, Relation::GreaterEqual, 1}}).status == Status::Unbounded);
  CHECK(maximize({1}, {{{1}, Relation::LessEqual, 1}, {{1}, Relation::GreaterEqual, 2}}).status ==
        Status::Infeasible);
  const Solution e = maximize({-1, -1}, {{{1, 1}, Relation::Equal, 3}});
  REQUIRE(e.status == Status::Optimal);
  CHECK(e.value == doctest::Approx(-3.0));
}
