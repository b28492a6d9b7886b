#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "amoeba/lattice.hpp"

namespace amoeba {

using Complex = std::complex<double>;

struct Term {
  IntVector exponent;  // over the declared generators
  Complex coeff;
};

// A finite sum of c * exp(<z, lambda>) with lambda = exponent^T * generators.
class ExponentialSum {
 public:
  ExponentialSum(std::vector<RealVector> generators, std::vector<Term> terms);

  std::size_t dim() const { return generators_.front().size(); }
  std::size_t generator_count() const { return generators_.size(); }
  std::size_t size() const { return terms_.size(); }

  const std::vector<RealVector>& generators() const { return generators_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<RealVector>& spectrum() const { return spectrum_; }

  IntMatrix exponent_matrix() const;

  // f at a real point.
  Complex evaluate(const RealVector& x) const;

  // exp(<z, mu>) * f for mu given over the generators.
  ExponentialSum shifted_by(const IntVector& mu) const;

 private:
  std::vector<RealVector> generators_;
  std::vector<Term> terms_;
  std::vector<RealVector> spectrum_;
};

// Angles on the character torus, reduced into [0, 2pi).
struct TorusPoint {
  RealVector theta;

  explicit TorusPoint(RealVector angles);
  static TorusPoint zero(std::size_t r) { return TorusPoint(RealVector(r, 0.0)); }
};

// sum a(f,lambda) exp(<x,lambda> + i <gamma(lambda), theta>): f_chi(x) for chi(omega_l) = e^{i theta_l}.
Complex evaluate_perturbed(const ExponentialSum& f, const LatticeIso& iso, const RealVector& x,
                           const TorusPoint& theta);

struct VertexWitness {
  std::size_t index;   // term index of the vertex
  RealVector direction;  // x with |x|_inf <= 1 strictly separating the vertex
  double margin;         // min over other points of <x, lambda* - lambda>
};

struct VertexTolerance {
  double accept = 1e-7;     // relative to max |lambda|_inf
  double ambiguous = 1e-9;  // below this a point is clearly not a vertex
};

// Newton-polytope vertices with their LP separation witnesses, sorted by index.
// Throws NumericallyAmbiguous when a margin falls between the two tolerances.
std::vector<VertexWitness> newton_vertex_witnesses(const ExponentialSum& f, VertexTolerance tol = {});
std::vector<std::size_t> newton_vertices(const ExponentialSum& f, VertexTolerance tol = {});

bool is_maximally_sparse(const ExponentialSum& f);

// LP membership of p in conv(points), componentwise slack tol.
bool in_convex_hull(const std::vector<RealVector>& points, const RealVector& p, double tol = 1e-9);

double dot(const RealVector& a, const RealVector& b);

}  // namespace amoeba
