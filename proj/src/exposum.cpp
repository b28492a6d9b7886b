#include "amoeba/exposum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "amoeba/errors.hpp"
#include "amoeba/simplex.hpp"

namespace amoeba {

double dot(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "exposum", "dot product of unequal lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ExponentialSum::ExponentialSum(std::vector<RealVector> generators, std::vector<Term> terms)
    : generators_(std::move(generators)), terms_(std::move(terms)) {
  if (generators_.empty() || generators_.front().empty())
    throw Error(ErrorKind::InvalidInput, "exposum", "need at least one generator in dimension >= 1");
  if (terms_.empty()) throw Error(ErrorKind::InvalidInput, "exposum", "an exponential sum needs at least one term");
  const std::size_t n = generators_.front().size();
  for (const auto& g : generators_)
    if (g.size() != n) throw Error(ErrorKind::DimensionMismatch, "exposum", "ragged generator matrix");

  std::set<std::vector<std::string>> seen;
  for (const auto& t : terms_) {
    if (t.exponent.size() != generators_.size())
      throw Error(ErrorKind::DimensionMismatch, "exposum", "exponent length differs from generator count");
    if (t.coeff == Complex(0.0, 0.0) || !std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
      throw Error(ErrorKind::InvalidInput, "exposum", "coefficients must be finite and nonzero");
    std::vector<std::string> key;
    for (const auto& e : t.exponent) key.push_back(e.get_str());
    if (!seen.insert(key).second) throw Error(ErrorKind::InvalidInput, "exposum", "duplicate exponent vector");

    RealVector lambda(n, 0.0);
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const double c = to_double(t.exponent[i]);
      for (std::size_t j = 0; j < n; ++j) lambda[j] += c * generators_[i][j];
    }
    spectrum_.push_back(std::move(lambda));
  }
}

IntMatrix ExponentialSum::exponent_matrix() const {
  std::vector<IntVector> rows;
  for (const auto& t : terms_) rows.push_back(t.exponent);
  return IntMatrix::from_rows(rows, generators_.size());
}

Complex ExponentialSum::evaluate(const RealVector& x) const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) s += terms_[i].coeff * std::exp(dot(x, spectrum_[i]));
  return s;
}

ExponentialSum ExponentialSum::shifted_by(const IntVector& mu) const {
  if (mu.size() != generators_.size()) throw Error(ErrorKind::DimensionMismatch, "exposum", "shift length");
  std::vector<Term> shifted = terms_;
  for (auto& t : shifted)
    for (std::size_t i = 0; i < mu.size(); ++i) t.exponent[i] += mu[i];
  return ExponentialSum(generators_, std::move(shifted));
}

TorusPoint::TorusPoint(RealVector angles) : theta(std::move(angles)) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (double& a : theta) {
    a = std::fmod(a, two_pi);
    if (a < 0) a += two_pi;
    if (a >= two_pi) a = 0.0;
  }
}

Complex evaluate_perturbed(const ExponentialSum& f, const LatticeIso& iso, const RealVector& x,
                           const TorusPoint& theta) {
  if (theta.theta.size() != iso.rank())
    throw Error(ErrorKind::DimensionMismatch, "exposum", "torus point length differs from lattice rank");
  if (x.size() != f.dim()) throw Error(ErrorKind::DimensionMismatch, "exposum", "point dimension");
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const IntVector k = iso.to_gamma(f.terms()[i].exponent);
    double phase = 0.0;
    for (std::size_t l = 0; l < k.size(); ++l) phase += to_double(k[l]) * theta.theta[l];
    s += f.terms()[i].coeff * std::exp(Complex(dot(x, f.spectrum()[i]), phase));
  }
  return s;
}

namespace {

// max s subject to <x, lambda* - lambda> >= s for all lambda != lambda*, |x|_inf <= 1.
// Variables: u = x + 1 in [0, 2]^n, and s = sigma - shift with sigma >= 0.
std::pair<double, RealVector> separation_lp(const std::vector<RealVector>& spectrum, std::size_t star) {
  const std::size_t n = spectrum.front().size();
  double shift = 1.0;
  for (std::size_t t = 0; t < spectrum.size(); ++t) {
    double l1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) l1 += std::abs(spectrum[star][j] - spectrum[t][j]);
    shift = std::max(shift, l1 + 1.0);
  }
  std::vector<lp::Constraint> rows;
  for (std::size_t t = 0; t < spectrum.size(); ++t) {
    if (t == star) continue;
    lp::Constraint c;
    c.coeffs.assign(n + 1, 0.0);
    double sum_d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = spectrum[star][j] - spectrum[t][j];
      c.coeffs[j] = -d;
      sum_d += d;
    }
    c.coeffs[n] = 1.0;
    c.rhs = shift - sum_d;
    rows.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < n; ++j) {
    lp::Constraint c;
    c.coeffs.assign(n + 1, 0.0);
    c.coeffs[j] = 1.0;
    c.rhs = 2.0;
    rows.push_back(std::move(c));
  }
  std::vector<double> objective(n + 1, 0.0);
  objective[n] = 1.0;
  const lp::Solution sol = lp::maximize(objective, rows);
  if (sol.status != lp::Status::Optimal)
    throw Error(ErrorKind::NumericallyAmbiguous, "exposum", "vertex separation LP did not reach an optimum");
  RealVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = sol.x[j] - 1.0;
  return {sol.x[n] - shift, x};
}

}  // namespace

std::vector<VertexWitness> newton_vertex_witnesses(const ExponentialSum& f, VertexTolerance tol) {
  const auto& spectrum = f.spectrum();
  if (spectrum.size() == 1) return {VertexWitness{0, RealVector(f.dim(), 0.0), 0.0}};
  double scale = 0.0;
  for (const auto& l : spectrum)
    for (double v : l) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1e-300);

  std::vector<VertexWitness> out;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    auto [margin, x] = separation_lp(spectrum, i);
    if (margin > tol.accept * scale) {
      out.push_back(VertexWitness{i, std::move(x), margin});
    } else if (margin > tol.ambiguous * scale) {
      throw Error(ErrorKind::NumericallyAmbiguous, "exposum",
                  "vertex status of spectrum point " + std::to_string(i) + " depends on the tolerance");
    }
  }
  return out;
}

std::vector<std::size_t> newton_vertices(const ExponentialSum& f, VertexTolerance tol) {
  std::vector<std::size_t> idx;
  for (const auto& w : newton_vertex_witnesses(f, tol)) idx.push_back(w.index);
  return idx;
}

bool is_maximally_sparse(const ExponentialSum& f) { return newton_vertices(f).size() == f.size(); }

bool in_convex_hull(const std::vector<RealVector>& points, const RealVector& p, double tol) {
  if (points.empty()) return false;
  const std::size_t n = p.size();
  const std::size_t k = points.size();
  std::vector<lp::Constraint> rows;
  lp::Constraint sum{std::vector<double>(k, 1.0), lp::Relation::Equal, 1.0};
  rows.push_back(sum);
  for (std::size_t j = 0; j < n; ++j) {
    lp::Constraint hi{std::vector<double>(k), lp::Relation::LessEqual, p[j] + tol};
    lp::Constraint lo{std::vector<double>(k), lp::Relation::GreaterEqual, p[j] - tol};
    for (std::size_t i = 0; i < k; ++i) hi.coeffs[i] = lo.coeffs[i] = points[i][j];
    rows.push_back(std::move(hi));
    rows.push_back(std::move(lo));
  }
  return lp::maximize(std::vector<double>(k, 0.0), rows).status == lp::Status::Optimal;
}

}  // namespace amoeba
