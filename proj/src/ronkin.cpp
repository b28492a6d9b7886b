#include "amoeba/ronkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "amoeba/errors.hpp"

namespace amoeba {

LaurentPoly::LaurentPoly(std::size_t rank, std::vector<LaurentTerm> terms) : rank_(rank), terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorKind::InvalidInput, "ronkin", "empty Laurent polynomial");
  std::set<std::vector<std::string>> seen;
  for (const auto& t : terms_) {
    if (t.k.size() != rank_) throw Error(ErrorKind::DimensionMismatch, "ronkin", "exponent length differs from rank");
    if (t.coeff == Complex(0.0, 0.0)) throw Error(ErrorKind::InvalidInput, "ronkin", "zero coefficient");
    std::vector<std::string> key;
    for (const auto& v : t.k) key.push_back(v.get_str());
    if (!seen.insert(key).second) throw Error(ErrorKind::InvalidInput, "ronkin", "duplicate exponent");
    RealVector kr;
    for (const auto& v : t.k) kr.push_back(to_double(v));
    k_real_.push_back(std::move(kr));
  }
}

std::vector<std::vector<long>> LaurentPoly::exponents() const {
  std::vector<std::vector<long>> out;
  for (const auto& t : terms_) {
    std::vector<long> k;
    for (const auto& v : t.k) k.push_back(to_long(v));
    out.push_back(std::move(k));
  }
  return out;
}

Complex LaurentPoly::evaluate(const RealVector& y, const RealVector& theta) const {
  if (y.size() != rank_ || theta.size() != rank_) throw Error(ErrorKind::DimensionMismatch, "ronkin", "point rank");
  Complex s = 0.0;
  for (std::size_t t = 0; t < terms_.size(); ++t)
    s += terms_[t].coeff * std::exp(Complex(dot(k_real_[t], y), dot(k_real_[t], theta)));
  return s;
}

double LaurentPoly::torus_coefficients(const RealVector& y, std::vector<Complex>& out) const {
  if (y.size() != rank_) throw Error(ErrorKind::DimensionMismatch, "ronkin", "point rank");
  out.resize(terms_.size());
  double log_scale = -INFINITY;
  std::vector<double> logs(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    logs[t] = std::log(std::abs(terms_[t].coeff)) + dot(k_real_[t], y);
    log_scale = std::max(log_scale, logs[t]);
  }
  for (std::size_t t = 0; t < terms_.size(); ++t)
    out[t] = terms_[t].coeff / std::abs(terms_[t].coeff) * std::exp(logs[t] - log_scale);
  return log_scale;
}

LaurentPoly LaurentPoly::twisted(const RealVector& phi) const {
  if (phi.size() != rank_) throw Error(ErrorKind::DimensionMismatch, "ronkin", "twist rank");
  std::vector<LaurentTerm> terms = terms_;
  for (std::size_t t = 0; t < terms.size(); ++t) terms[t].coeff *= std::polar(1.0, dot(k_real_[t], phi));
  return LaurentPoly(rank_, std::move(terms));
}

LaurentPoly laurent_from(const ExponentialSum& f, const LatticeIso& iso) {
  std::vector<LaurentTerm> terms;
  for (const auto& t : f.terms()) terms.push_back(LaurentTerm{iso.to_gamma(t.exponent), t.coeff});
  return LaurentPoly(iso.rank(), std::move(terms));
}

RealVector embed_L(const LatticeIso& iso, const RealVector& x) {
  if (x.size() != iso.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "ronkin", "point dimension");
  RealVector y(iso.rank());
  for (std::size_t l = 0; l < iso.rank(); ++l) y[l] = dot(x, iso.omega()[l]);
  return y;
}

std::optional<IntVector> lopsided_order(const LaurentPoly& p, const RealVector& y) {
  std::vector<Complex> c;
  p.torus_coefficients(y, c);
  std::size_t top = 0;
  for (std::size_t t = 1; t < c.size(); ++t)
    if (std::abs(c[t]) > std::abs(c[top])) top = t;
  double others = 0.0;
  for (std::size_t t = 0; t < c.size(); ++t)
    if (t != top) others += std::abs(c[t]);
  if (std::abs(c[top]) > others) return p.terms()[top].k;
  return std::nullopt;
}

RonkinEvaluator::RonkinEvaluator(LaurentPoly p, QuadratureOptions options)
    : poly_(std::move(p)), options_(options), hull_([this] {
        std::vector<IntVector> pts;
        for (const auto& t : poly_.terms()) pts.push_back(t.k);
        return convex_hull(pts);
      }()) {
  if (options_.grid < 8) throw Error(ErrorKind::InvalidInput, "ronkin", "quadrature grid needs at least 8 nodes per axis");
}

const TorusSampler& RonkinEvaluator::sampler(std::size_t grid, bool jitter) {
  const double shift = jitter ? 0.5 : 0.0;
  for (const auto& s : samplers_)
    if (s->nodes_per_axis() == grid && s->shift() == shift) return *s;
  samplers_.push_back(std::make_unique<TorusSampler>(poly_.exponents(), poly_.rank(), grid, shift));
  return *samplers_.back();
}

double RonkinEvaluator::quadrature(const RealVector& y, std::size_t grid, bool& jittered) {
  const double log_scale = poly_.torus_coefficients(y, scratch_);
  TorusSampler::MeanLog r = sampler(grid, false).mean_log_modulus(scratch_);
  if (r.min_modulus < options_.singular_tolerance) {
    jittered = true;
    r = sampler(grid, true).mean_log_modulus(scratch_);
    if (r.min_modulus < options_.singular_tolerance)
      throw Error(ErrorKind::SingularSample, "ronkin", "quadrature node on the zero set after jitter");
  }
  return log_scale + r.mean_log;
}

RonkinValue RonkinEvaluator::value(const RealVector& y) {
  RonkinValue out;
  out.value = quadrature(y, options_.grid, out.jittered);
  if (options_.convergence_check) {
    const double fine = quadrature(y, 2 * options_.grid, out.jittered);
    out.refinement_delta = std::abs(fine - out.value);
  }
  return out;
}

OrderResult RonkinEvaluator::gradient_order(const RealVector& y, const OrderOptions& options) {
  OrderResult out;
  out.gradient_raw.assign(poly_.rank(), 0.0);
  out.order_gamma.assign(poly_.rank(), BigInt(0));
  bool jittered = false;
  try {
    for (std::size_t l = 0; l < poly_.rank(); ++l) {
      RealVector up = y, down = y;
      up[l] += options.step;
      down[l] -= options.step;
      out.gradient_raw[l] =
          (quadrature(up, options.grid, jittered) - quadrature(down, options.grid, jittered)) / (2.0 * options.step);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularSample) throw;
    out.residual = INFINITY;
    return out;
  }
  double residual = 0.0;
  for (std::size_t l = 0; l < poly_.rank(); ++l) {
    const double r = std::round(out.gradient_raw[l]);
    residual = std::max(residual, std::abs(out.gradient_raw[l] - r));
    out.order_gamma[l] = BigInt(static_cast<long>(r));
  }
  out.residual = residual;
  out.resolved = std::isfinite(residual) && residual <= options.max_residual && hull_.contains(out.order_gamma);
  return out;
}

RonkinValue ronkin_NP(const LaurentPoly& p, const RealVector& y, QuadratureOptions options) {
  RonkinEvaluator ev(p, options);
  return ev.value(y);
}

RonkinValue ronkin_Nf(const ExponentialSum& f, const LatticeIso& iso, const RealVector& x, QuadratureOptions options) {
  return ronkin_NP(laurent_from(f, iso), embed_L(iso, x), options);
}

OrderResult order_at(const LaurentPoly& p, const LatticeIso& iso, const RealVector& x, OrderOptions options) {
  RonkinEvaluator ev(p, QuadratureOptions{options.grid});
  OrderResult out = ev.gradient_order(embed_L(iso, x), options);
  out.point = x;
  if (!out.resolved)
    throw Error(ErrorKind::OrderUnresolved, "ronkin",
                "gradient residual " + std::to_string(out.residual) + " exceeds tolerance or leaves Gamma_P");
  out.order_spectrum = iso.to_spectrum(out.order_gamma);
  return out;
}

double unit_ball_volume(std::size_t r) {
  const double half = static_cast<double>(r) / 2.0;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double ronkin_bound(const ExponentialSum& f, const LatticeIso& iso) {
  const std::size_t r = iso.rank();
  double max_norm = 0.0;
  for (const auto& t : f.terms())
    for (const auto& v : iso.to_gamma(t.exponent)) max_norm = std::max(max_norm, std::abs(to_double(v)));
  const double rr = static_cast<double>(r);
  return std::pow(2.0, -rr) * unit_ball_volume(r) * std::pow(std::sqrt(rr) + 2.0 * rr * max_norm, rr);
}

}  // namespace amoeba
