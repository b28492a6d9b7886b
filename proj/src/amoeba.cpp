#include "amoeba/amoeba.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "amoeba/errors.hpp"
#include "parallel.hpp"

namespace amoeba {

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::CertifiedComplement: return "CertifiedComplement";
    case Membership::LikelyAmoeba: return "LikelyAmoeba";
    case Membership::LikelyComplement: return "LikelyComplement";
  }
  return "Unknown";
}

namespace {

// Solves a small dense system in place (partial pivoting). Returns false if singular.
bool solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    if (a[piv][c] == 0.0) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t j = c + 1; j < n; ++j) b[c] -= a[c][j] * b[j];
    b[c] /= a[c][c];
  }
  return true;
}

Complex torus_value(const std::vector<Complex>& c, const std::vector<RealVector>& k, const RealVector& theta,
                    std::vector<Complex>* jac) {
  Complex f = 0.0;
  if (jac) jac->assign(theta.size(), Complex(0.0, 0.0));
  for (std::size_t t = 0; t < c.size(); ++t) {
    const Complex term = c[t] * std::polar(1.0, dot(k[t], theta));
    f += term;
    if (jac)
      for (std::size_t l = 0; l < theta.size(); ++l) (*jac)[l] += Complex(0.0, k[t][l]) * term;
  }
  return f;
}

// Levenberg-Marquardt descent on |F(theta)|^2 from a grid node.
double refine_min_modulus(const std::vector<Complex>& c, const std::vector<RealVector>& k, RealVector theta) {
  const std::size_t r = theta.size();
  std::vector<Complex> jac;
  Complex f = torus_value(c, k, theta, &jac);
  double best = std::abs(f);
  double mu = 1e-10;
  for (int iter = 0; iter < 60 && best > 1e-16; ++iter) {
    std::vector<std::vector<double>> m(r, std::vector<double>(r, 0.0));
    std::vector<double> g(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j)
        m[i][j] = jac[i].real() * jac[j].real() + jac[i].imag() * jac[j].imag();
      g[i] = -(jac[i].real() * f.real() + jac[i].imag() * f.imag());
    }
    double diag = 0.0;
    for (std::size_t i = 0; i < r; ++i) diag = std::max(diag, m[i][i]);
    if (diag == 0.0) break;
    for (std::size_t i = 0; i < r; ++i) m[i][i] += mu * (m[i][i] + 1e-12 * diag);
    if (!solve_dense(m, g)) break;
    RealVector trial = theta;
    double step = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      trial[i] += g[i];
      step = std::max(step, std::abs(g[i]));
    }
    std::vector<Complex> trial_jac;
    const Complex ft = torus_value(c, k, trial, &trial_jac);
    if (std::abs(ft) < best) {
      theta = std::move(trial);
      f = ft;
      jac = std::move(trial_jac);
      best = std::abs(ft);
      mu = std::max(mu / 10.0, 1e-14);
    } else {
      mu *= 10.0;
      if (mu > 1e8) break;
    }
    if (step < 1e-14) break;
  }
  return best;
}

// Aligned configurations (all phases 0 or pi) are grid nodes and stationary points
// of |F|^2, so a start sitting on one never moves; retry from offsets around it.
double refine_from_node(const std::vector<Complex>& c, const std::vector<RealVector>& k, const RealVector& theta,
                        double spacing, double good_enough) {
  double best = refine_min_modulus(c, k, theta);
  const std::size_t r = theta.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << r) && best >= good_enough; ++mask) {
    RealVector start = theta;
    for (std::size_t l = 0; l < r; ++l) start[l] += ((mask >> l) & 1 ? 0.37 : -0.29) * spacing;
    best = std::min(best, refine_min_modulus(c, k, start));
  }
  return best;
}

}  // namespace

MembershipTester::MembershipTester(LaurentPoly p, MembershipOptions options)
    : poly_(std::move(p)), options_(options), sampler_(poly_.exponents(), poly_.rank(), options.theta_grid) {
  if (options_.theta_grid < 16)
    throw Error(ErrorKind::InvalidInput, "amoeba", "membership needs a theta grid of at least 16 per axis");
  for (const auto& t : poly_.terms()) {
    RealVector kr;
    for (const auto& v : t.k) kr.push_back(to_double(v));
    k_real_.push_back(std::move(kr));
  }
}

double MembershipTester::min_modulus(const RealVector& y) const {
  std::vector<Complex> c;
  const double log_scale = poly_.torus_coefficients(y, c);
  const TorusSampler::Min grid = sampler_.min_modulus(c);
  const double spacing = 2.0 * std::numbers::pi / static_cast<double>(options_.theta_grid);
  const double refined = refine_from_node(c, k_real_, grid.theta, spacing, options_.threshold);
  return std::min(grid.modulus, refined) * std::exp(log_scale);
}

MembershipVerdict MembershipTester::classify(const RealVector& y) const {
  MembershipVerdict v;
  std::vector<Complex> c;
  const double log_scale = poly_.torus_coefficients(y, c);
  const double scale = std::exp(log_scale);
  std::size_t top = 0;
  for (std::size_t t = 1; t < c.size(); ++t)
    if (std::abs(c[t]) > std::abs(c[top])) top = t;
  double others = 0.0;
  for (std::size_t t = 0; t < c.size(); ++t)
    if (t != top) others += std::abs(c[t]);
  if (std::abs(c[top]) > others) {
    v.status = Membership::CertifiedComplement;
    v.min_modulus = (std::abs(c[top]) - others) * scale;
    v.order = poly_.terms()[top].k;
    return v;
  }
  const TorusSampler::Min grid = sampler_.min_modulus(c);
  const double spacing = 2.0 * std::numbers::pi / static_cast<double>(options_.theta_grid);
  const double refined = std::min(grid.modulus, refine_from_node(c, k_real_, grid.theta, spacing, options_.threshold));
  v.min_modulus = refined * scale;
  v.status = refined < options_.threshold ? Membership::LikelyAmoeba : Membership::LikelyComplement;
  return v;
}

MembershipVerdict membership(const ExponentialSum& f, const LatticeIso& iso, const RealVector& x,
                             MembershipOptions options) {
  const MembershipTester tester(laurent_from(f, iso), options);
  MembershipVerdict v = tester.classify(embed_L(iso, x));
  v.point = x;
  return v;
}

Box auto_box(const ExponentialSum& f, const LatticeIso& iso) {
  const std::size_t n = f.dim();
  Box box{RealVector(n, 0.0), RealVector(n, 0.0)};
  const auto& spectrum = f.spectrum();
  for (const VertexWitness& w : newton_vertex_witnesses(f)) {
    if (f.size() == 1 || w.margin <= 0.0) continue;
    const double a_star = std::abs(f.terms()[w.index].coeff);
    auto dominated = [&](double t) {
      double s = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (i == w.index) continue;
        RealVector d(n);
        for (std::size_t j = 0; j < n; ++j) d[j] = spectrum[w.index][j] - spectrum[i][j];
        s += std::abs(f.terms()[i].coeff) / a_star * std::exp(-t * dot(w.direction, d));
      }
      return s < 1.0;
    };
    double hi = 1.0;
    for (int i = 0; i < 80 && !dominated(hi); ++i) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (dominated(mid) ? hi : lo) = mid;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double p = 1.2 * hi * w.direction[j];
      box.lo[j] = std::min(box.lo[j], p);
      box.hi[j] = std::max(box.hi[j], p);
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    if (box.hi[j] - box.lo[j] < 1e-9) {
      box.lo[j] -= 1.0;
      box.hi[j] += 1.0;
    }
  (void)iso;
  return box;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Sample {
  Membership status = Membership::LikelyAmoeba;
  std::optional<IntVector> order;
};


}  // namespace

ComponentReport scan_components(const ExponentialSum& f, const LatticeIso& iso, const ScanOptions& options) {
  const std::size_t n = f.dim();
  if (n > 2) throw Error(ErrorKind::UnsupportedRank, "amoeba", "component scans support n <= 2");
  if (options.resolution < 2) throw Error(ErrorKind::InvalidInput, "amoeba", "resolution must be at least 2");
  const LaurentPoly poly = laurent_from(f, iso);
  const MembershipTester tester(poly, options.membership);

  ComponentReport report;
  report.scan_box = options.box ? *options.box : auto_box(f, iso);
  report.resolution = options.resolution;
  report.theta_grid = options.membership.theta_grid;
  const Box& box = report.scan_box;
  const std::size_t res = options.resolution;
  const std::size_t total = n == 1 ? res : res * res;

  auto coord = [&](std::size_t flat) {
    RealVector x(n);
    std::size_t rest = flat;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t i = rest % res;
      rest /= res;
      x[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * static_cast<double>(i) / static_cast<double>(res - 1);
    }
    return x;
  };

  std::vector<Sample> samples(total);
  detail::parallel_for(total, options.threads, [&](std::size_t begin, std::size_t end) {
    RonkinEvaluator evaluator(poly, QuadratureOptions{options.order.grid});
    for (std::size_t s = begin; s < end; ++s) {
      const RealVector y = embed_L(iso, coord(s));
      const MembershipVerdict v = tester.classify(y);
      samples[s].status = v.status;
      if (v.status == Membership::CertifiedComplement) {
        samples[s].order = v.order;
      } else if (v.status == Membership::LikelyComplement) {
        const OrderResult o = evaluator.gradient_order(y, options.order);
        if (o.resolved) samples[s].order = o.order_gamma;
      }
    }
  });

  DisjointSets sets(total);
  auto joinable = [&](std::size_t a, std::size_t b) {
    return samples[a].order && samples[b].order && *samples[a].order == *samples[b].order;
  };
  for (std::size_t s = 0; s < total; ++s) {
    if (samples[s].status == Membership::LikelyAmoeba) ++report.amoeba_samples;
    else if (!samples[s].order) ++report.unresolved_samples;
    const std::size_t i = s % res;
    if (i + 1 < res && joinable(s, s + 1)) sets.unite(s, s + 1);
    if (n == 2 && s / res + 1 < res && joinable(s, s + res)) sets.unite(s, s + res);
  }

  std::map<IntVector, std::vector<std::size_t>> by_order;
  std::map<IntVector, std::vector<std::size_t>> roots_by_order;
  for (std::size_t s = 0; s < total; ++s) {
    if (!samples[s].order) continue;
    by_order[*samples[s].order].push_back(s);
    if (sets.find(s) == s) roots_by_order[*samples[s].order].push_back(s);
  }

  for (const auto& [order, members] : by_order) {
    Component c;
    c.order_gamma = order;
    c.order_spectrum = iso.to_spectrum(order);
    c.sample_count = members.size();
    c.pieces = roots_by_order[order].size();
    c.extent_lo.assign(n, std::numeric_limits<double>::infinity());
    c.extent_hi.assign(n, -std::numeric_limits<double>::infinity());
    c.centroid.assign(n, 0.0);
    for (std::size_t s : members) {
      const RealVector x = coord(s);
      if (samples[s].status == Membership::CertifiedComplement) ++c.certified_samples;
      for (std::size_t j = 0; j < n; ++j) {
        c.extent_lo[j] = std::min(c.extent_lo[j], x[j]);
        c.extent_hi[j] = std::max(c.extent_hi[j], x[j]);
        c.centroid[j] += x[j] / static_cast<double>(members.size());
      }
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s : members) {
      const RealVector x = coord(s);
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d += (x[j] - c.centroid[j]) * (x[j] - c.centroid[j]);
      if (d < best) {
        best = d;
        c.sample = x;
      }
    }
    report.components.push_back(std::move(c));
  }
  report.rho_estimate = report.components.size();

  const LatticePolytope gamma_hull = convex_hull(gamma_images(f, iso));
  for (const auto& c : report.components)
    if (!gamma_hull.contains(c.order_gamma))
      throw Error(ErrorKind::OrderUnresolved, "amoeba", "component order outside Gamma_P");
  for (std::size_t v : newton_vertices(f)) {
    const IntVector k = iso.to_gamma(f.terms()[v].exponent);
    if (!by_order.count(k))
      throw Error(ErrorKind::BoxTooSmall, "amoeba",
                  "scan box misses the component of Newton vertex " + std::to_string(v));
  }
  return report;
}

void check_bound_chain(const AmoebaReport& r) {
  if (!(r.card_vertices <= r.rho_estimate && r.rho_estimate <= r.card_lambda &&
        static_cast<double>(r.card_lambda) < r.upsilon && std::isfinite(r.upsilon)))
    throw Error(ErrorKind::BoundChainViolation, "amoeba",
                "expected " + std::to_string(r.card_vertices) + " <= " + std::to_string(r.rho_estimate) +
                    " <= " + std::to_string(r.card_lambda) + " < " + std::to_string(r.upsilon));
}

AmoebaReport analyze(const ExponentialSum& f, const LatticeIso& iso, const AnalysisOptions& options) {
  if (iso.rank() == 0)
    throw Error(ErrorKind::UnsupportedRank, "amoeba", "constant exponential sums (rank 0) have no amoeba to analyze");
  if (iso.rank() > 3) throw Error(ErrorKind::UnsupportedRank, "amoeba", "lattice rank above 3 is not supported");
  AmoebaReport r;
  r.dim = f.dim();
  r.rank = iso.rank();
  r.vertex_indices = newton_vertices(f);
  r.card_vertices = r.vertex_indices.size();
  r.gamma_points = gamma_images(f, iso);
  r.lambda = lambda_set(f, iso, options.box_cap);
  r.card_lambda = r.lambda.size();
  r.upsilon = ronkin_bound(f, iso);
  r.sparse = r.card_vertices == f.size();
  r.newton_integer_points = integer_points_in_newton_polytope(f, options.box_cap);
  r.components = scan_components(f, iso, options.scan);
  r.rho_estimate = r.components.rho_estimate;
  r.solid_observed = r.rho_estimate == r.card_vertices;
  check_bound_chain(r);
  return r;
}

AmoebaReport analyze(const ExponentialSum& f, const AnalysisOptions& options) {
  return analyze(f, build_iso(f.exponent_matrix(), f.generators()), options);
}

PerturbationReport perturbation_invariance_check(const ExponentialSum& f, const LatticeIso& iso,
                                                 const std::vector<RealVector>& samples,
                                                 const std::vector<RealVector>& characters,
                                                 MembershipOptions options) {
  const LaurentPoly poly = laurent_from(f, iso);
  const MembershipTester plain(poly, options);
  PerturbationReport report;
  for (const auto& phi : characters) {
    const MembershipTester twisted(poly.twisted(phi), options);
    for (const auto& x : samples) {
      const RealVector y = embed_L(iso, x);
      const Membership a = plain.classify(y).status;
      const Membership b = twisted.classify(y).status;
      ++report.checks;
      if (a != b) report.disagreements.push_back(Disagreement{x, phi, a, b});
    }
  }
  return report;
}

}  // namespace amoeba
