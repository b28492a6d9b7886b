#include <doctest.h>

#include <cmath>
#include <random>

#include "amoeba/errors.hpp"
#include "amoeba/lattice.hpp"
#include "support.hpp"

using namespace amoeba;
using testing::iv;

namespace {

// Determinant by cofactor expansion over the integers (small matrices only).
BigInt det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  BigInt d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    const BigInt term = m(0, c) * det(minor);
    d += (c % 2 == 0) ? term : BigInt(-term);
  }
  return d;
}

void check_hnf_shape(const HermiteForm& f) {
  const IntMatrix& h = f.h;
  std::size_t last_pivot = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (i >= f.rank) {
      CHECK(p == h.cols());
      continue;
    }
    REQUIRE(p < h.cols());
    if (i > 0) CHECK(p > last_pivot);
    last_pivot = p;
    CHECK(h(i, p) > 0);
    for (std::size_t above = 0; above < i; ++above) {
      CHECK(h(above, p) >= 0);
      CHECK(h(above, p) < h(i, p));
    }
  }
}

}  // namespace

TEST_CASE("hnf goldens") {
  const HermiteForm a = hermite_normal_form(IntMatrix::from_rows({{3, 0}, {1, 2}}));
  CHECK(a.h == IntMatrix::from_rows({{1, 2}, {0, 6}}));
  CHECK(a.rank == 2);
  CHECK(a.u * IntMatrix::from_rows({{3, 0}, {1, 2}}) == a.h);

  const HermiteForm b = hermite_normal_form(IntMatrix::from_rows({{2, 0}, {0, 2}, {2, 2}}));
  CHECK(b.rank == 2);
  CHECK(b.h.top_rows(2) == IntMatrix::from_rows({{2, 0}, {0, 2}}));
  CHECK(lattice_rank(IntMatrix::from_rows({{2, 0}, {0, 2}, {2, 2}})) == 2);

  CHECK(lattice_rank(IntMatrix::from_rows({{0, 0}, {0, 0}})) == 0);
  CHECK(lattice_rank(IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}})) == 1);
}

TEST_CASE("hnf is idempotent, unimodular and canonical under row operations") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    IntMatrix k(4, 3);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 3; ++j) k(i, j) = entry(rng);
    const HermiteForm f = hermite_normal_form(k);
    check_hnf_shape(f);
    CHECK(f.u * k == f.h);
    const BigInt d = det(f.u);
    CHECK((d == 1 || d == -1));
    CHECK(hermite_normal_form(f.h).h == f.h);
    const IntMatrix v = testing::random_unimodular(4, rng);
    CHECK(hermite_normal_form(v * k).h == f.h);
  }
}

TEST_CASE("integer kernel and unimodular inverse") {
  const IntMatrix a = IntMatrix::from_rows({{1, 2, 3}});
  const IntMatrix ker = integer_kernel(a);
  CHECK(ker.rows() == 2);
  CHECK((a * ker.transpose()).is_zero());

  const IntMatrix v = IntMatrix::from_rows({{2, 1}, {1, 1}});
  CHECK(v * unimodular_inverse(v) == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix::from_rows({{2, 0}, {0, 1}})), Error);
}

TEST_CASE("solve_row_combination") {
  const IntMatrix basis = IntMatrix::from_rows({{2, 0}, {1, 2}});
  CHECK(solve_row_combination(basis, iv({0, 4})) == iv({-1, 2}));
  CHECK_FALSE(solve_row_combination(basis, iv({1, 0})).has_value());
}

TEST_CASE("build_iso: pinned basis for the quadrilateral example") {
  const IntMatrix exps = IntMatrix::from_rows({{0, 0}, {2, 0}, {0, 4}, {2, 4}, {1, 2}});
  const std::vector<RealVector> gens{{1.0, 0.0}, {0.0, 1.0}};
  const LatticeIso iso = build_iso(exps, gens, IntMatrix::from_rows({{2, 0}, {1, 2}}));
  CHECK(iso.rank() == 2);
  CHECK(iso.to_gamma(iv({2, 0})) == iv({1, 0}));
  CHECK(iso.to_gamma(iv({1, 2})) == iv({0, 1}));
  CHECK(iso.to_gamma(iv({0, 4})) == iv({-1, 2}));
  CHECK(iso.to_gamma(iv({2, 4})) == iv({0, 2}));
  CHECK(iso.from_gamma(iv({-1, 2})) == iv({0, 4}));
  CHECK_THROWS_AS(iso.to_gamma(iv({1, 0})), Error);

  // A basis of a different lattice is rejected.
  CHECK_THROWS_AS(build_iso(exps, gens, IntMatrix::from_rows({{1, 0}, {0, 1}})), Error);
}

TEST_CASE("build_iso: free generators give the identity chart") {
  const IntMatrix exps = IntMatrix::from_rows({{0, 0}, {1, 0}, {0, 1}});
  const LatticeIso iso = build_iso(exps, {{std::sqrt(2.0)}, {std::sqrt(5.0)}});
  CHECK(iso.rank() == 2);
  CHECK(iso.to_gamma(iv({1, 0})) == iv({1, 0}));
  CHECK(iso.to_gamma(iv({0, 1})) == iv({0, 1}));
  CHECK(iso.to_spectrum(iv({1, 1}))[0] == doctest::Approx(std::sqrt(2.0) + std::sqrt(5.0)));
}

TEST_CASE("round trip through a reparameterized iso") {
  std::mt19937 rng(11);
  const IntMatrix exps = IntMatrix::from_rows({{0, 0}, {1, 0}, {-1, 3}, {0, 1}});
  const LatticeIso iso = build_iso(exps, {{3 * std::sqrt(2.0)}, {std::sqrt(2.0) + 3.141592653589793}});
  for (int t = 0; t < 5; ++t) {
    const IntMatrix v = testing::random_unimodular(2, rng);
    const LatticeIso w = iso.reparameterized(v);
    for (std::size_t i = 0; i < exps.rows(); ++i) {
      const IntVector k = w.to_gamma(exps.row(i));
      CHECK(w.from_gamma(k) == exps.row(i));
    }
  }
}

TEST_CASE("generator relations are detected") {
  CHECK_THROWS_AS(check_generators_independent({{1.0}, {2.0}}), Error);
  CHECK_THROWS_AS(check_generators_independent({{std::sqrt(2.0)}, {3 * std::sqrt(2.0)}}), Error);
  CHECK_NOTHROW(check_generators_independent({{std::sqrt(2.0)}, {std::sqrt(3.0)}}));
  try {
    check_generators_independent({{0.5}, {1.5}});
    FAIL("expected DegenerateGenerators");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateGenerators);
  }
}
