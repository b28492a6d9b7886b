#include "amoeba/geometry.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "amoeba/errors.hpp"

namespace amoeba {
namespace {

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

bool make_primitive(IntVector& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return false;
  for (auto& x : v) x /= g;
  return true;
}

// Normal to the hyperplane through the given d points of Z^d.
IntVector hyperplane_normal(const std::vector<const IntVector*>& pts, std::size_t d) {
  IntVector n(d);
  if (d == 1) {
    n[0] = 1;
  } else if (d == 2) {
    const IntVector v = sub(*pts[1], *pts[0]);
    n[0] = -v[1];
    n[1] = v[0];
  } else {
    const IntVector a = sub(*pts[1], *pts[0]);
    const IntVector b = sub(*pts[2], *pts[0]);
    n[0] = a[1] * b[2] - a[2] * b[1];
    n[1] = a[2] * b[0] - a[0] * b[2];
    n[2] = a[0] * b[1] - a[1] * b[0];
  }
  return n;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct FullHull {
  std::vector<IntVector> vertices;
  std::vector<Halfspace> facets;
};

// Hull of points spanning Z^d affinely (d <= 3), by exact facet enumeration.
FullHull full_dimensional_hull(const std::vector<IntVector>& pts, std::size_t d) {
  FullHull out;
  if (d == 0) {
    out.vertices.push_back(pts.front());
    return out;
  }
  for_each_subset(pts.size(), d, [&](const std::vector<std::size_t>& subset) {
    std::vector<const IntVector*> sel;
    for (std::size_t i : subset) sel.push_back(&pts[i]);
    IntVector normal = hyperplane_normal(sel, d);
    if (!make_primitive(normal)) return;
    BigInt offset = dot(normal, *sel.front());
    bool all_le = true;
    bool all_ge = true;
    for (const auto& p : pts) {
      const BigInt v = dot(normal, p);
      if (v > offset) all_le = false;
      if (v < offset) all_ge = false;
      if (!all_le && !all_ge) return;
    }
    if (!all_le) {
      for (auto& x : normal) x = -x;
      offset = -offset;
    }
    Halfspace h{std::move(normal), std::move(offset)};
    if (std::find(out.facets.begin(), out.facets.end(), h) == out.facets.end()) out.facets.push_back(std::move(h));
  });
  for (const auto& p : pts) {
    std::vector<IntVector> tight;
    for (const auto& h : out.facets)
      if (dot(h.normal, p) == h.offset) tight.push_back(h.normal);
    if (tight.size() < d) continue;
    if (lattice_rank(IntMatrix::from_rows(tight, d)) == d) out.vertices.push_back(p);
  }
  return out;
}

// w with chart * w == target, w in the row space of chart, over Q.
std::vector<mpq_class> lift_functional(const IntMatrix& chart, const IntVector& target) {
  const std::size_t d = chart.rows();
  const std::size_t r = chart.cols();
  // Gram system (chart chart^T) z = target.
  std::vector<std::vector<mpq_class>> g(d, std::vector<mpq_class>(d + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      mpq_class s = 0;
      for (std::size_t k = 0; k < r; ++k) s += mpq_class(chart(i, k) * chart(j, k));
      g[i][j] = s;
    }
    g[i][d] = mpq_class(target[i]);
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (g[piv][c] == 0) ++piv;
    std::swap(g[piv], g[c]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || g[i][c] == 0) continue;
      const mpq_class f = g[i][c] / g[c][c];
      for (std::size_t j = c; j <= d; ++j) g[i][j] -= f * g[c][j];
    }
  }
  std::vector<mpq_class> w(r, 0);
  for (std::size_t i = 0; i < d; ++i) {
    const mpq_class z = g[i][d] / g[i][i];
    for (std::size_t k = 0; k < r; ++k) w[k] += z * mpq_class(chart(i, k));
  }
  return w;
}

IntVector integer_direction(const std::vector<mpq_class>& w) {
  BigInt l = 1;
  for (const auto& q : w) l = lcm(l, q.get_den());
  IntVector v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    mpq_class s = w[i] * mpq_class(l);
    v[i] = s.get_num();
  }
  make_primitive(v);
  return v;
}

}  // namespace

LatticePolytope convex_hull(const std::vector<IntVector>& points) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "geometry", "convex hull of an empty set");
  const std::size_t r = points.front().size();
  if (r > 3) throw Error(ErrorKind::UnsupportedRank, "geometry", "hulls are supported for rank <= 3");
  for (const auto& p : points)
    if (p.size() != r) throw Error(ErrorKind::DimensionMismatch, "geometry", "points of mixed dimension");

  std::vector<IntVector> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  LatticePolytope poly;
  poly.ambient_dim_ = r;
  poly.origin_ = pts.front();

  std::vector<IntVector> diffs;
  for (const auto& p : pts) diffs.push_back(sub(p, poly.origin_));
  const IntMatrix diff_matrix = IntMatrix::from_rows(diffs, r);
  const std::size_t d = r == 0 ? 0 : lattice_rank(diff_matrix);
  poly.local_dim_ = d;

  IntMatrix normals(0, r);
  if (d == r) {
    poly.chart_ = IntMatrix::identity(r);
  } else {
    normals = integer_kernel(diff_matrix);
    poly.chart_ = integer_kernel(normals);
  }

  for (const auto& df : diffs) {
    if (d == 0) {
      poly.local_vertices_.emplace_back();
      continue;
    }
    auto c = solve_row_combination(poly.chart_, df);
    if (!c) throw Error(ErrorKind::NonIntegralSolve, "geometry", "point outside its affine lattice chart");
    poly.local_vertices_.push_back(std::move(*c));
  }
  FullHull local = full_dimensional_hull(poly.local_vertices_, d);
  poly.local_vertices_ = local.vertices;
  poly.local_halfspaces_ = local.facets;

  for (const auto& c : poly.local_vertices_) {
    IntVector y = poly.origin_;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < r; ++k) y[k] += c[i] * poly.chart_(i, k);
    poly.vertices_.push_back(std::move(y));
  }

  for (const auto& h : poly.local_halfspaces_) {
    IntVector w = d == r ? h.normal : integer_direction(lift_functional(poly.chart_, h.normal));
    BigInt offset = dot(w, poly.vertices_.front());
    for (const auto& v : poly.vertices_) offset = std::max(offset, dot(w, v));
    poly.halfspaces_.push_back(Halfspace{std::move(w), std::move(offset)});
  }
  for (std::size_t i = 0; i < normals.rows(); ++i) {
    IntVector n = normals.row(i);
    const BigInt off = dot(n, poly.origin_);
    IntVector neg = n;
    for (auto& x : neg) x = -x;
    poly.halfspaces_.push_back(Halfspace{std::move(n), off});
    poly.halfspaces_.push_back(Halfspace{std::move(neg), -off});
  }

  // Sort vertices, keep local coordinates aligned.
  std::vector<std::size_t> order(poly.vertices_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return poly.vertices_[a] < poly.vertices_[b]; });
  std::vector<IntVector> sv, sl;
  for (std::size_t i : order) {
    sv.push_back(poly.vertices_[i]);
    sl.push_back(poly.local_vertices_[i]);
  }
  poly.vertices_ = std::move(sv);
  poly.local_vertices_ = std::move(sl);
  return poly;
}

bool LatticePolytope::contains(const IntVector& y) const {
  if (y.size() != ambient_dim_) throw Error(ErrorKind::DimensionMismatch, "geometry", "point dimension");
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const Halfspace& h) { return dot(h.normal, y) <= h.offset; });
}

std::vector<IntVector> LatticePolytope::lattice_points(double box_cap) const {
  const std::size_t d = local_dim_;
  std::vector<long> lo(d), hi(d);
  double volume = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    BigInt mn = local_vertices_.front()[i], mx = mn;
    for (const auto& v : local_vertices_) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    volume *= (BigInt(mx - mn + 1)).get_d();
    if (volume > box_cap)
      throw Error(ErrorKind::BoxTooLarge, "geometry", "bounding box exceeds the enumeration cap");
    lo[i] = to_long(mn);
    hi[i] = to_long(mx);
  }

  std::vector<IntVector> out;
  IntVector c(d);
  std::vector<long> cur = lo;
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) c[i] = cur[i];
    const bool inside = std::all_of(local_halfspaces_.begin(), local_halfspaces_.end(),
                                    [&](const Halfspace& h) { return dot(h.normal, c) <= h.offset; });
    if (inside) {
      IntVector y = origin_;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < ambient_dim_; ++k) y[k] += c[i] * chart_(i, k);
      out.push_back(std::move(y));
    }
    std::size_t i = 0;
    while (i < d && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == d) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

double support_function(const LatticePolytope& poly, const RealVector& y) {
  if (y.size() != poly.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "geometry", "direction dimension");
  double best = -INFINITY;
  for (const auto& v : poly.vertices()) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * to_double(v[i]);
    best = std::max(best, s);
  }
  return best;
}

std::vector<IntVector> gamma_images(const ExponentialSum& f, const LatticeIso& iso) {
  std::vector<IntVector> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back(iso.to_gamma(t.exponent));
  return out;
}

LambdaSet lambda_set(const ExponentialSum& f, const LatticeIso& iso, double box_cap) {
  const LatticePolytope hull = convex_hull(gamma_images(f, iso));
  LambdaSet out;
  out.points_gamma = hull.lattice_points(box_cap);
  for (const auto& k : out.points_gamma) out.points_spectrum.push_back(iso.to_spectrum(k));
  return out;
}

std::optional<std::size_t> integer_points_in_newton_polytope(const ExponentialSum& f, double box_cap) {
  if (f.dim() > 3) return std::nullopt;
  std::vector<IntVector> pts;
  for (const auto& l : f.spectrum()) {
    IntVector p(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) {
      const double r = std::round(l[j]);
      if (std::abs(l[j] - r) > 1e-9 * std::max(1.0, std::abs(l[j]))) return std::nullopt;
      p[j] = BigInt(static_cast<long>(r));
    }
    pts.push_back(std::move(p));
  }
  return convex_hull(pts).lattice_points(box_cap).size();
}

}  // namespace amoeba
