#pragma once

// Shared fixtures and independent oracles for the test programs.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "amoeba/document.hpp"
#include "amoeba/lattice.hpp"

namespace testing {

inline std::string sample_path(const std::string& name) { return std::string(AMOEBA_SAMPLES_DIR) + "/" + name + ".json"; }

inline amoeba::InputDocument sample(const std::string& name) { return amoeba::load_input(sample_path(name)); }

inline const std::vector<std::string>& shipped_examples() {
  static const std::vector<std::string> names{"ex1", "ex2", "ex3", "ex4", "ex5"};
  return names;
}

inline amoeba::IntVector iv(std::initializer_list<long> v) {
  amoeba::IntVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

using Pt = std::pair<long, long>;

inline long cross(Pt o, Pt a, Pt b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

// Andrew's monotone chain; collinear points dropped.
inline std::vector<Pt> hull2(std::vector<Pt> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<Pt> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

// Integer points of conv(p) by brute force over the bounding box.
inline std::size_t count_lattice_points_2d(const std::vector<Pt>& p) {
  const std::vector<Pt> h = hull2(p);
  long x0 = h[0].first, x1 = x0, y0 = h[0].second, y1 = y0;
  for (auto [x, y] : h) {
    x0 = std::min(x0, x), x1 = std::max(x1, x);
    y0 = std::min(y0, y), y1 = std::max(y1, y);
  }
  std::size_t count = 0;
  for (long x = x0; x <= x1; ++x)
    for (long y = y0; y <= y1; ++y) {
      const Pt q{x, y};
      bool in = true;
      if (h.size() == 1) {
        in = q == h[0];
      } else if (h.size() == 2) {
        in = cross(h[0], h[1], q) == 0;  // bounding box already clips the segment
      } else {
        for (std::size_t i = 0; i < h.size() && in; ++i) in = cross(h[i], h[(i + 1) % h.size()], q) >= 0;
      }
      count += in;
    }
  return count;
}

// Closed-form rank-2 bound: (pi/4) (sqrt 2 + 4 m)^2 with m = max |k|_inf.
inline double upsilon_rank2(long m) {
  const double s = std::sqrt(2.0) + 4.0 * static_cast<double>(m);
  return std::numbers::pi / 4.0 * s * s;
}

// Random unimodular r x r matrix: product of elementary row operations.
inline amoeba::IntMatrix random_unimodular(std::size_t r, std::mt19937& rng, int steps = 6) {
  amoeba::IntMatrix v = amoeba::IntMatrix::identity(r);
  std::uniform_int_distribution<int> row(0, static_cast<int>(r) - 1), coef(-2, 2), coin(0, 3);
  for (int s = 0; s < steps; ++s) {
    const int a = row(rng), b = row(rng);
    if (coin(rng) == 0) {
      v.swap_rows(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      continue;
    }
    if (a == b) continue;
    const int c = coef(rng);
    for (std::size_t j = 0; j < r; ++j) v(a, j) += c * v(b, j);
  }
  if (coin(rng) == 0)
    for (std::size_t j = 0; j < r; ++j) v(0, j) = -v(0, j);
  return v;
}

}  // namespace testing
