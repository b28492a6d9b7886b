#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "amoeba/exposum.hpp"
#include "amoeba/geometry.hpp"
#include "amoeba/lattice.hpp"
#include "amoeba/torus.hpp"

namespace amoeba {

struct LaurentTerm {
  IntVector k;
  Complex coeff;
};

class LaurentPoly {
 public:
  LaurentPoly(std::size_t rank, std::vector<LaurentTerm> terms);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<LaurentTerm>& terms() const { return terms_; }
  std::vector<std::vector<long>> exponents() const;

  // P(zeta) at zeta_l = exp(y_l + i theta_l).
  Complex evaluate(const RealVector& y, const RealVector& theta) const;

  // a_k exp(<k, y>) / scale with scale = the largest term modulus; returns ln(scale).
  double torus_coefficients(const RealVector& y, std::vector<Complex>& out) const;

  // Character twist: coefficients a_k exp(i <k, phi>).
  LaurentPoly twisted(const RealVector& phi) const;

 private:
  std::size_t rank_;
  std::vector<LaurentTerm> terms_;
  std::vector<RealVector> k_real_;
};

LaurentPoly laurent_from(const ExponentialSum& f, const LatticeIso& iso);

// L(x) = (<x, omega_1>, ..., <x, omega_r>).
RealVector embed_L(const LatticeIso& iso, const RealVector& x);

// Exponent of a monomial whose modulus at y exceeds the sum of all the others.
std::optional<IntVector> lopsided_order(const LaurentPoly& p, const RealVector& y);

struct QuadratureOptions {
  std::size_t grid = 64;
  bool convergence_check = false;  // also evaluate at 2*grid and report the difference
  double singular_tolerance = 1e-14;  // relative to the largest term modulus
};

struct RonkinValue {
  double value = 0.0;
  bool jittered = false;               // grid was shifted off a singular node
  std::optional<double> refinement_delta;  // |N(grid) - N(2 grid)| when checked
};

struct OrderOptions {
  std::size_t grid = 64;
  double step = 1e-3;
  double max_residual = 0.1;
};

struct OrderResult {
  RealVector point;
  RealVector gradient_raw;
  IntVector order_gamma;
  RealVector order_spectrum;
  double residual = 0.0;
  bool resolved = false;
};

// Ronkin function of P by periodic trapezoid quadrature, with lazily built
// samplers per grid size. Immutable after construction apart from the cache;
// use one instance per thread.
class RonkinEvaluator {
 public:
  explicit RonkinEvaluator(LaurentPoly p, QuadratureOptions options = {});

  const LaurentPoly& poly() const { return poly_; }
  const LatticePolytope& newton_polytope() const { return hull_; }

  RonkinValue value(const RealVector& y);
  // Central-difference gradient at y rounded to Z^r; never throws for unresolved gradients.
  OrderResult gradient_order(const RealVector& y, const OrderOptions& options);

 private:
  double quadrature(const RealVector& y, std::size_t grid, bool& jittered);
  const TorusSampler& sampler(std::size_t grid, bool jitter);

  LaurentPoly poly_;
  QuadratureOptions options_;
  LatticePolytope hull_;
  std::vector<std::unique_ptr<TorusSampler>> samplers_;
  std::vector<Complex> scratch_;
};

RonkinValue ronkin_NP(const LaurentPoly& p, const RealVector& y, QuadratureOptions options = {});
RonkinValue ronkin_Nf(const ExponentialSum& f, const LatticeIso& iso, const RealVector& x,
                      QuadratureOptions options = {});

// Order of the complement component containing x; throws OrderUnresolved when the
// residual exceeds the tolerance or the rounded gradient lies outside Gamma_P.
OrderResult order_at(const LaurentPoly& p, const LatticeIso& iso, const RealVector& x, OrderOptions options = {});

// Volume of the unit ball in R^r.
double unit_ball_volume(std::size_t r);

// 2^-r kappa_r (sqrt(r) + 2 r max_k |k|_inf)^r over k in gamma(Sp f).
double ronkin_bound(const ExponentialSum& f, const LatticeIso& iso);

}  // namespace amoeba
