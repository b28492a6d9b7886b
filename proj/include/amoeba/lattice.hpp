#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace amoeba {

using BigInt = mpz_class;
using IntVector = std::vector<BigInt>;
using RealVector = std::vector<double>;

// Dense integer matrix, row-major, exact entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  std::vector<IntVector> row_list() const;
  bool is_zero() const;
  IntMatrix transpose() const;
  IntMatrix top_rows(std::size_t count) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

struct HermiteForm {
  IntMatrix h;  // row-style HNF, nonzero rows first
  IntMatrix u;  // unimodular, u * input == h
  std::size_t rank = 0;
};

// Row-style Hermite normal form: pivots positive, entries above a pivot reduced into [0, pivot).
HermiteForm hermite_normal_form(const IntMatrix& k);

std::size_t lattice_rank(const IntMatrix& k);

// Basis (as rows) of the saturated lattice {v in Z^cols : a * v = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

// Inverse of a unimodular square matrix; throws InvalidInput when det != ±1.
IntMatrix unimodular_inverse(const IntMatrix& v);

// Solves c^T * basis = target for integer c, basis rows linearly independent.
// Returns nullopt when target is outside the row lattice of basis.
std::optional<IntVector> solve_row_combination(const IntMatrix& basis, const IntVector& target);

// Isomorphism between the group generated by the spectrum and Z^r.
//
// `basis` rows are a Z-basis of the row lattice of the exponent matrix, written
// over the declared generators; `omega` holds the same basis as real vectors.
class LatticeIso {
 public:
  LatticeIso(IntMatrix basis, std::vector<RealVector> omega);

  std::size_t rank() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return omega_.empty() ? 0 : omega_.front().size(); }
  const IntMatrix& basis() const { return basis_; }
  const std::vector<RealVector>& omega() const { return omega_; }

  // Exponent vector over the generators -> gamma coordinates. Throws NonIntegralSolve.
  IntVector to_gamma(const IntVector& exponent) const;
  // gamma coordinates -> exponent vector over the generators.
  IntVector from_gamma(const IntVector& k) const;
  // gamma coordinates -> point of R^n (sum of k_l * omega_l).
  RealVector to_spectrum(const IntVector& k) const;

  // The isomorphism v∘gamma for a unimodular r×r matrix v.
  LatticeIso reparameterized(const IntMatrix& v) const;

 private:
  IntMatrix basis_;
  std::vector<RealVector> omega_;
  IntMatrix echelon_;    // HNF of basis_
  IntMatrix transform_;  // transform_ * basis_ == echelon_
};

// Rejects generator matrices with a small integer relation (|v|_inf <= radius).
void check_generators_independent(const std::vector<RealVector>& generators, int radius = 10);

// Builds gamma for an exponent matrix (rows = spectrum points over the generators).
// `pinned_basis`, when given, must span the same lattice as the exponents.
LatticeIso build_iso(const IntMatrix& exponents, const std::vector<RealVector>& generators,
                     const std::optional<IntMatrix>& pinned_basis = std::nullopt);

double to_double(const BigInt& v);
long to_long(const BigInt& v);

}  // namespace amoeba
