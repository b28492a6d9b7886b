// Acceptance checks: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance 3 7        run only criteria 3 and 7
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amoeba/amoeba.hpp"
#include "amoeba/errors.hpp"
#include "amoeba/geometry.hpp"
#include "amoeba/ronkin.hpp"
#include "support.hpp"

using namespace amoeba;
using testing::iv;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "{" + s + "}";
}

struct Example {
  std::string name;
  InputDocument doc;
  ExponentialSum f;
  LatticeIso iso;
};

const std::vector<Example>& examples() {
  static const std::vector<Example> all = [] {
    std::vector<Example> out;
    for (const auto& name : testing::shipped_examples()) {
      InputDocument doc = testing::sample(name);
      ExponentialSum f = doc.to_sum();
      LatticeIso iso = doc.build_iso();
      out.push_back({name, std::move(doc), std::move(f), std::move(iso)});
    }
    return out;
  }();
  return all;
}

// The documented scan settings: 400 samples per axis, 64 theta nodes per axis, automatic box.
ScanOptions reference_scan() {
  ScanOptions o;
  o.resolution = 400;
  o.membership.theta_grid = 64;
  return o;
}

void criterion1(Outcome& out) {
  const auto t0 = Clock::now();
  const std::vector<std::size_t> expected{3, 4, 10, 9, 5};
  std::vector<std::size_t> got;
  for (const auto& e : examples()) got.push_back(lambda_set(e.f, e.iso).size());
  out.expect(got == expected, "card Lambda " + join(got) + " expected " + join(expected));

  const auto ex5 = integer_points_in_newton_polytope(examples()[4].f);
  out.expect(ex5 == 15u, "ex5 card(Gamma_f ∩ Z^2) = " + (ex5 ? std::to_string(*ex5) : "n/a") + ", expected 15");

  const InputDocument intro = testing::sample("intro");
  const std::size_t intro_lambda = lambda_set(intro.to_sum(), intro.build_iso()).size();
  out.expect(intro_lambda == 5, "intro card Lambda = " + std::to_string(intro_lambda) + ", expected 5");
  const auto intro_gamma = integer_points_in_newton_polytope(intro.to_sum());
  out.expect(intro_gamma == 11u, "intro card(Gamma_f ∩ Z^2) = " + (intro_gamma ? std::to_string(*intro_gamma) : "n/a") +
                                     ", expected 11; brute-force count of conv{(0,0),(2,0),(0,2),(4,4)} gives " +
                                     std::to_string(testing::count_lattice_points_2d({{0, 0}, {2, 0}, {0, 2}, {4, 4}})));
  const double dt = seconds_since(t0);
  out.expect(dt < 1.0, "runtime " + std::to_string(dt) + " s");
  out.detail << " card Lambda " << join(got) << ", " << dt << " s";
}

void criterion2(Outcome& out) {
  const std::vector<std::pair<double, double>> bracket{{23, 24}, {141, 142}, {141, 142}, {69, 70}, {69, 70}};
  for (std::size_t i = 0; i < bracket.size(); ++i) {
    const double u = ronkin_bound(examples()[i].f, examples()[i].iso);
    out.expect(u > bracket[i].first && u < bracket[i].second, examples()[i].name + " upsilon " + std::to_string(u));
    out.detail << ' ' << examples()[i].name << '=' << u;
  }
}

std::vector<ComponentReport>& reference_scans() {
  static std::vector<ComponentReport> scans;
  return scans;
}

void criterion3(Outcome& out) {
  const std::vector<std::size_t> expected{3, 3, 5, 3, 4};
  std::vector<std::size_t> got;
  double worst = 0.0;
  reference_scans().clear();
  for (const auto& e : examples()) {
    const auto t0 = Clock::now();
    reference_scans().push_back(scan_components(e.f, e.iso, reference_scan()));
    worst = std::max(worst, seconds_since(t0));
    got.push_back(reference_scans().back().rho_estimate);
  }
  out.expect(got == expected, "rho " + join(got) + " expected " + join(expected));
  out.expect(worst < 60.0, "slowest example " + std::to_string(worst) + " s");
  out.detail << " rho " << join(got) << ", slowest " << worst << " s";
}

// Random sums with gamma-exponents in [-3,3]^2 spanning a rank-2 lattice.
ExponentialSum random_sum(std::mt19937& rng, bool plane) {
  std::uniform_int_distribution<int> e(-3, 3), count(2, 8);
  std::uniform_real_distribution<double> mod(0.1, 10.0), ang(0.0, 6.283185307179586);
  for (;;) {
    const int k = count(rng);
    std::set<std::pair<int, int>> seen;
    std::vector<Term> terms;
    while (static_cast<int>(terms.size()) < k) {
      const std::pair<int, int> p{e(rng), e(rng)};
      if (!seen.insert(p).second) continue;
      terms.push_back({iv({p.first, p.second}), std::polar(mod(rng), ang(rng))});
    }
    IntMatrix m(terms.size(), 2);
    for (std::size_t i = 0; i < terms.size(); ++i) m(i, 0) = terms[i].exponent[0], m(i, 1) = terms[i].exponent[1];
    if (lattice_rank(m) != 2) continue;
    if (plane) return ExponentialSum({{1.0, 0.0}, {0.0, 1.0}}, terms);
    return ExponentialSum({{std::sqrt(2.0)}, {std::sqrt(3.0)}}, terms);
  }
}

void criterion4(Outcome& out) {
  std::mt19937 rng(20240601);
  std::size_t checked = 0;
  auto run = [&](const std::string& label, const ExponentialSum& f, const LatticeIso& iso) {
    try {
      AnalysisOptions o;
      o.scan = reference_scan();
      const AmoebaReport r = analyze(f, iso, o);  // throws BoundChainViolation on a broken chain
      const bool ok = r.card_vertices <= r.rho_estimate && r.rho_estimate <= r.card_lambda &&
                      static_cast<double>(r.card_lambda) < r.upsilon;
      out.expect(ok, label + " chain " + std::to_string(r.card_vertices) + "," + std::to_string(r.rho_estimate) + "," +
                         std::to_string(r.card_lambda) + "," + std::to_string(r.upsilon));
    } catch (const Error& err) {
      out.expect(false, label + ": " + err.what());
    }
    ++checked;
  };
  for (const auto& e : examples()) run(e.name, e.f, e.iso);
  for (int i = 0; i < 50; ++i) {
    const ExponentialSum f = random_sum(rng, i % 5 == 4);  // every fifth sum lives in C^2
    run("random#" + std::to_string(i), f, build_iso(f.exponent_matrix(), f.generators()));
  }
  out.detail << ' ' << checked << " sums checked";
}

void criterion5(Outcome& out) {
  std::mt19937 rng(5);
  std::size_t checks = 0;
  for (const auto& e : examples()) {
    const std::size_t lambda = lambda_set(e.f, e.iso).size();
    const std::size_t verts = convex_hull(gamma_images(e.f, e.iso)).vertices().size();
    for (int t = 0; t < 10; ++t) {
      const IntMatrix v = testing::random_unimodular(e.iso.rank(), rng);
      const LatticeIso w = e.iso.reparameterized(v);
      out.expect(lambda_set(e.f, w).size() == lambda, e.name + " card Lambda changed");
      out.expect(convex_hull(gamma_images(e.f, w)).vertices().size() == verts, e.name + " vertex count changed");
      ++checks;
    }
  }
  out.detail << ' ' << checks << " reparameterizations";
}

std::set<IntVector> orders_of(const ComponentReport& r) {
  std::set<IntVector> s;
  for (const auto& c : r.components) s.insert(c.order_gamma);
  return s;
}

void criterion6(Outcome& out) {
  if (reference_scans().size() != examples().size()) {
    reference_scans().clear();
    for (const auto& e : examples()) reference_scans().push_back(scan_components(e.f, e.iso, reference_scan()));
  }
  std::size_t orders = 0, shifts = 0;
  const std::vector<IntVector> mus{iv({1, 0}), iv({-1, 2})};
  for (std::size_t i = 0; i < examples().size(); ++i) {
    const Example& e = examples()[i];
    const ComponentReport& base = reference_scans()[i];
    const LambdaSet lambda = lambda_set(e.f, e.iso);
    const std::set<IntVector> lambda_pts(lambda.points_gamma.begin(), lambda.points_gamma.end());
    for (const auto& c : base.components) {
      out.expect(lambda_pts.count(c.order_gamma) == 1, e.name + " order outside Lambda");
      ++orders;
    }
    out.expect(orders_of(base).size() == base.components.size(), e.name + " repeated order");

    for (const IntVector& mu_gamma : mus) {
      const IntVector mu = e.iso.from_gamma(mu_gamma);  // an element of Xi_f over the generators
      const ExponentialSum g = e.f.shifted_by(mu);
      const LatticeIso g_iso = build_iso(g.exponent_matrix(), g.generators(), e.iso.basis());
      const IntVector shift = e.iso.to_gamma(mu);
      out.expect(shift == mu_gamma, e.name + " gamma(mu) round trip");
      const ComponentReport moved = scan_components(g, g_iso, reference_scan());
      std::set<IntVector> expected;
      for (IntVector k : orders_of(base)) {
        for (std::size_t l = 0; l < k.size(); ++l) k[l] += shift[l];
        expected.insert(k);
      }
      out.expect(orders_of(moved) == expected, e.name + " orders not shifted by gamma(mu)");
      out.expect(moved.rho_estimate == base.rho_estimate, e.name + " rho changed under a monomial shift");
      ++shifts;
    }
  }
  out.detail << ' ' << orders << " orders, " << shifts << " shifts";
}

void criterion7(Outcome& out) {
  const LaurentPoly p(1, {{iv({0}), 1.0}, {iv({1}), 1.0}});
  RonkinEvaluator ev(p, QuadratureOptions{64});
  double worst_value = 0.0, worst_grad = 0.0;
  for (double y : {-3.0, -2.0, -1.0, 1.0, 2.0, 3.0}) {
    worst_value = std::max(worst_value, std::abs(ev.value({y}).value - std::max(0.0, y)));
    const OrderResult o = ev.gradient_order({y}, OrderOptions{64, 1e-3, 0.1});
    worst_grad = std::max(worst_grad, std::abs(o.gradient_raw[0] - (y > 0 ? 1.0 : 0.0)));
  }
  out.expect(worst_value < 1e-6, "value error " + std::to_string(worst_value));
  out.expect(worst_grad < 1e-4, "gradient error " + std::to_string(worst_grad));
  out.detail << " max |N - max(0,y)| = " << worst_value << ", max gradient error = " << worst_grad;
}

void criterion8(Outcome& out) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  std::size_t checks = 0, disagreements = 0;
  for (const auto& e : examples()) {
    const Box box = auto_box(e.f, e.iso);
    std::vector<RealVector> samples, chars;
    for (int s = 0; s < 50; ++s) {
      RealVector x;
      for (std::size_t d = 0; d < e.f.dim(); ++d) {
        const double pad = 0.25 * (box.hi[d] - box.lo[d]);
        x.push_back(std::uniform_real_distribution<double>(box.lo[d] - pad, box.hi[d] + pad)(rng));
      }
      samples.push_back(std::move(x));
    }
    for (int c = 0; c < 10; ++c) {
      RealVector phi;
      for (std::size_t l = 0; l < e.iso.rank(); ++l) phi.push_back(ang(rng));
      chars.push_back(std::move(phi));
    }
    const PerturbationReport r = perturbation_invariance_check(e.f, e.iso, samples, chars);
    checks += r.checks;
    disagreements += r.disagreements.size();
    out.expect(r.disagreements.empty(), e.name + " " + std::to_string(r.disagreements.size()) + " disagreements");
  }
  out.detail << ' ' << checks << " checks, " << disagreements << " disagreements";
}

void criterion9(Outcome& out) {
  const ExponentialSum f({{1.0, 0.0}}, {{iv({0}), 1.0}, {iv({1}), 1.0}});
  const LatticeIso iso = build_iso(f.exponent_matrix(), f.generators());
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> offset(-20.0, 20.0);
  std::size_t checks = 0;
  for (double x1 : {-3.0, -1.0, -0.25, 0.0, 0.25, 1.0, 3.0}) {
    const Membership base = membership(f, iso, {x1, 0.0}).status;
    for (int i = 0; i < 20; ++i) {
      const double x2 = offset(rng);
      out.expect(membership(f, iso, {x1, x2}).status == base,
                 "verdict changed at (" + std::to_string(x1) + ", " + std::to_string(x2) + ")");
      ++checks;
    }
  }
  out.detail << ' ' << checks << " fiber points";
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "example lattice-point counts", criterion1},
      {2, "bound brackets", criterion2},
      {3, "component counts at reference settings", criterion3},
      {4, "bound chain on examples and random sums", criterion4},
      {5, "invariance under reparameterization", criterion5},
      {6, "component orders", criterion6},
      {7, "Ronkin function against Jensen's formula", criterion7},
      {8, "invariance under character twists", criterion8},
      {9, "fiber invariance", criterion9},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all_pass = true;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s (%.2f s)%s\n", out.pass ? "PASS" : "FAIL", c.id, c.title, seconds_since(t0),
                out.detail.str().c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
