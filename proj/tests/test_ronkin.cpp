#include <doctest.h>

#include <cmath>
#include <random>

#include "amoeba/errors.hpp"
#include "amoeba/geometry.hpp"
#include "amoeba/ronkin.hpp"
#include "support.hpp"

using namespace amoeba;
using testing::iv;

namespace {

LaurentPoly one_plus_zeta() { return LaurentPoly(1, {{iv({0}), 1.0}, {iv({1}), 1.0}}); }

// (1 + z1)(1 + z2): by Jensen N(y) = max(0, y1) + max(0, y2).
LaurentPoly product_poly() {
  return LaurentPoly(2, {{iv({0, 0}), 1.0}, {iv({1, 0}), 1.0}, {iv({0, 1}), 1.0}, {iv({1, 1}), 1.0}});
}

}  // namespace

TEST_CASE("jensen oracle in one variable") {
  RonkinEvaluator ev(one_plus_zeta());
  for (double y : {-3.0, -2.0, -1.0, 1.0, 2.0, 3.0}) {
    CHECK(std::abs(ev.value({y}).value - std::max(0.0, y)) < 1e-6);
    const OrderResult o = ev.gradient_order({y}, {});
    CHECK(o.resolved);
    CHECK(std::abs(o.gradient_raw[0] - (y > 0 ? 1.0 : 0.0)) < 1e-4);
  }
  CHECK(std::abs(ronkin_NP(one_plus_zeta(), {0.5}).value - 0.5) < 1e-6);
}

TEST_CASE("jensen oracle in two variables") {
  RonkinEvaluator ev(product_poly());
  for (const RealVector& y : {RealVector{1.5, -2.0}, RealVector{-1.0, -1.0}, RealVector{2.0, 0.7}}) {
    const double expected = std::max(0.0, y[0]) + std::max(0.0, y[1]);
    CHECK(std::abs(ev.value(y).value - expected) < 1e-6);
    const OrderResult o = ev.gradient_order(y, {});
    CHECK(o.resolved);
    CHECK(o.order_gamma == iv({y[0] > 0 ? 1 : 0, y[1] > 0 ? 1 : 0}));
  }
}

TEST_CASE("singular node is avoided by jitter") {
  // On y = 0 the only zero of 1 + z sits at theta = pi, a grid node for even N.
  const RonkinValue v = ronkin_NP(one_plus_zeta(), {0.0});
  CHECK(v.jittered);
  // Shifted nodes are the roots of z^N = -1, so prod |1 + z_j| = 2 and the rule gives ln 2 / N.
  CHECK(v.value == doctest::Approx(std::log(2.0) / 64.0).epsilon(1e-9));
}

TEST_CASE("grid refinement is reported") {
  QuadratureOptions q;
  q.convergence_check = true;
  const RonkinValue v = ronkin_NP(product_poly(), {1.0, 2.0}, q);
  REQUIRE(v.refinement_delta.has_value());
  CHECK(*v.refinement_delta < 1e-8);
}

TEST_CASE("lopsided order") {
  const LaurentPoly p(2, {{iv({0, 0}), 1.0}, {iv({1, 0}), 3.0}, {iv({0, 1}), 1.0}});
  CHECK(lopsided_order(p, {0.0, 0.0}) == iv({1, 0}));
  CHECK(lopsided_order(p, {-5.0, -5.0}) == iv({0, 0}));
  CHECK(lopsided_order(p, {-5.0, 5.0}) == iv({0, 1}));
  // 3e^{y1} = 1.5 against 1 + 1: nothing dominates.
  CHECK_FALSE(lopsided_order(p, {std::log(0.5), 0.0}).has_value());
}

TEST_CASE("order_at on the first example") {
  const InputDocument doc = testing::sample("ex1");
  const ExponentialSum f = doc.to_sum();
  const LatticeIso iso = doc.build_iso();
  const LaurentPoly p = laurent_from(f, iso);
  CHECK(order_at(p, iso, {-5.0}).order_gamma == iv({0, 0}));
  CHECK(order_at(p, iso, {5.0}).order_gamma == iv({0, 1}));
  CHECK(order_at(p, iso, {0.0}).order_gamma == iv({1, 0}));
  // Order in spectrum coordinates is the matching frequency.
  CHECK(order_at(p, iso, {5.0}).order_spectrum[0] == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("ronkin function of f agrees with N_P on L") {
  const InputDocument doc = testing::sample("ex2");
  const ExponentialSum f = doc.to_sum();
  const LatticeIso iso = doc.build_iso();
  const double x = 0.37;
  CHECK(ronkin_Nf(f, iso, {x}).value == doctest::Approx(ronkin_NP(laurent_from(f, iso), embed_L(iso, {x})).value));
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 / 3.0 * std::numbers::pi));
}

TEST_CASE("bound brackets for the shipped examples") {
  // max |k|_inf of the Laurent exponents, read off the polynomials by hand.
  const std::vector<long> m{1, 3, 3, 2, 2};
  const std::vector<std::pair<double, double>> bracket{{23, 24}, {141, 142}, {141, 142}, {69, 70}, {69, 70}};
  for (std::size_t i = 0; i < m.size(); ++i) {
    const InputDocument doc = testing::sample(testing::shipped_examples()[i]);
    const double u = ronkin_bound(doc.to_sum(), doc.build_iso());
    CHECK(u == doctest::Approx(testing::upsilon_rank2(m[i])).epsilon(1e-12));
    CHECK(u > bracket[i].first);
    CHECK(u < bracket[i].second);
  }
}

TEST_CASE("gradient lies in the Newton polytope") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  const InputDocument doc = testing::sample("ex5");
  RonkinEvaluator ev(laurent_from(doc.to_sum(), doc.build_iso()));
  for (int t = 0; t < 20; ++t) {
    const OrderResult o = ev.gradient_order({coord(rng), coord(rng)}, {});
    if (o.resolved) CHECK(ev.newton_polytope().contains(o.order_gamma));
  }
}
