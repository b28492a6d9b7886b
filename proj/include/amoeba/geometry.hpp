#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "amoeba/exposum.hpp"
#include "amoeba/lattice.hpp"

namespace amoeba {

// <normal, y> <= offset, normal primitive.
struct Halfspace {
  IntVector normal;
  BigInt offset;
  bool operator==(const Halfspace&) const = default;
};

// Convex hull of finitely many points of Z^r (r <= 3), possibly lower dimensional.
//
// Lower-dimensional hulls are described in ambient coordinates by their facet
// inequalities plus each affine-hull equation as a pair of opposite halfspaces.
class LatticePolytope {
 public:
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return local_dim_; }
  const std::vector<IntVector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  bool contains(const IntVector& y) const;
  // All integer points, lexicographically sorted. Throws BoxTooLarge above the cap.
  std::vector<IntVector> lattice_points(double box_cap = 1e8) const;

 private:
  friend LatticePolytope convex_hull(const std::vector<IntVector>& points);

  std::size_t ambient_dim_ = 0;
  std::size_t local_dim_ = 0;
  std::vector<IntVector> vertices_;
  std::vector<Halfspace> halfspaces_;
  // Affine lattice chart: y = origin + sum c_i * chart row i, c in Z^dim.
  IntVector origin_;
  IntMatrix chart_;
  std::vector<IntVector> local_vertices_;
  std::vector<Halfspace> local_halfspaces_;
};

LatticePolytope convex_hull(const std::vector<IntVector>& points);

inline std::vector<IntVector> lattice_points(const LatticePolytope& poly, double box_cap = 1e8) {
  return poly.lattice_points(box_cap);
}

double support_function(const LatticePolytope& poly, const RealVector& y);

struct LambdaSet {
  std::vector<IntVector> points_gamma;
  std::vector<RealVector> points_spectrum;
  std::size_t size() const { return points_gamma.size(); }
};

// gamma images of the spectrum, in term order.
std::vector<IntVector> gamma_images(const ExponentialSum& f, const LatticeIso& iso);

LambdaSet lambda_set(const ExponentialSum& f, const LatticeIso& iso, double box_cap = 1e8);

// card(Gamma_f ∩ Z^n) when every spectrum point is integral (n <= 3); nullopt otherwise.
std::optional<std::size_t> integer_points_in_newton_polytope(const ExponentialSum& f, double box_cap = 1e8);

}  // namespace amoeba
