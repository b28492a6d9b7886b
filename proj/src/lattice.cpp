#include "amoeba/lattice.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>

#include "amoeba/errors.hpp"

namespace amoeba {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "lattice", "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "lattice", "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::top_rows(std::size_t count) const {
  IntMatrix t(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(i, j) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::DimensionMismatch, "lattice", "matrix product shape");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

namespace {

// rows (p, i) <- [[s, t], [-b/g, a/g]] * rows (p, i)
void combine_rows(IntMatrix& m, std::size_t p, std::size_t i, const BigInt& s, const BigInt& t,
                  const BigInt& bg, const BigInt& ag) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    BigInt rp = s * m(p, j) + t * m(i, j);
    BigInt ri = ag * m(i, j) - bg * m(p, j);
    m(p, j) = std::move(rp);
    m(i, j) = std::move(ri);
  }
}

void add_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& k) {
  HermiteForm out{k, IntMatrix::identity(k.rows()), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t p = 0;
  for (std::size_t col = 0; col < h.cols() && p < h.rows(); ++col) {
    for (std::size_t i = p + 1; i < h.rows(); ++i) {
      if (h(i, col) == 0) continue;
      if (h(p, col) == 0) {
        h.swap_rows(p, i);
        u.swap_rows(p, i);
        continue;
      }
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(p, col).get_mpz_t(), h(i, col).get_mpz_t());
      const BigInt ag = h(p, col) / g;
      const BigInt bg = h(i, col) / g;
      combine_rows(h, p, i, s, t, bg, ag);
      combine_rows(u, p, i, s, t, bg, ag);
    }
    if (h(p, col) == 0) continue;
    if (h(p, col) < 0) {
      negate_row(h, p);
      negate_row(u, p);
    }
    const BigInt& pivot = h(p, col);
    for (std::size_t i = 0; i < p; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), pivot.get_mpz_t());
      if (q == 0) continue;
      add_multiple(h, i, p, q);
      add_multiple(u, i, p, q);
    }
    ++p;
  }
  out.rank = p;
  return out;
}

std::size_t lattice_rank(const IntMatrix& k) { return hermite_normal_form(k).rank; }

IntMatrix integer_kernel(const IntMatrix& a) {
  const HermiteForm hf = hermite_normal_form(a.transpose());
  const std::size_t dim = a.cols() - hf.rank;
  IntMatrix out(dim, a.cols());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = hf.u(hf.rank + i, j);
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& v) {
  if (v.rows() != v.cols()) throw Error(ErrorKind::DimensionMismatch, "lattice", "inverse of non-square matrix");
  const HermiteForm hf = hermite_normal_form(v);
  if (!(hf.h == IntMatrix::identity(v.rows())))
    throw Error(ErrorKind::InvalidInput, "lattice", "matrix is not unimodular");
  return hf.u;
}

namespace {

// Solves d^T * echelon = target with echelon in row HNF of full row rank.
std::optional<IntVector> solve_echelon(const IntMatrix& echelon, const IntVector& target) {
  const std::size_t r = echelon.rows();
  IntVector d(r);
  IntVector residual = target;
  std::size_t col = 0;
  for (std::size_t l = 0; l < r; ++l) {
    while (col < echelon.cols() && echelon(l, col) == 0) {
      if (residual[col] != 0) return std::nullopt;
      ++col;
    }
    if (col == echelon.cols()) return std::nullopt;
    if (!mpz_divisible_p(residual[col].get_mpz_t(), echelon(l, col).get_mpz_t())) return std::nullopt;
    d[l] = residual[col] / echelon(l, col);
    for (std::size_t j = col; j < echelon.cols(); ++j) residual[j] -= d[l] * echelon(l, j);
    ++col;
  }
  for (const BigInt& v : residual)
    if (v != 0) return std::nullopt;
  return d;
}

}  // namespace

std::optional<IntVector> solve_row_combination(const IntMatrix& basis, const IntVector& target) {
  if (target.size() != basis.cols()) throw Error(ErrorKind::DimensionMismatch, "lattice", "target length");
  const HermiteForm hf = hermite_normal_form(basis);
  if (hf.rank != basis.rows()) throw Error(ErrorKind::InvalidInput, "lattice", "basis rows are dependent");
  auto d = solve_echelon(hf.h, target);
  if (!d) return std::nullopt;
  // c = u^T d
  IntVector c(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t l = 0; l < basis.rows(); ++l) c[i] += hf.u(l, i) * (*d)[l];
  return c;
}

LatticeIso::LatticeIso(IntMatrix basis, std::vector<RealVector> omega)
    : basis_(std::move(basis)), omega_(std::move(omega)) {
  if (omega_.size() != basis_.rows()) throw Error(ErrorKind::DimensionMismatch, "lattice", "omega count");
  const HermiteForm hf = hermite_normal_form(basis_);
  if (hf.rank != basis_.rows()) throw Error(ErrorKind::InvalidInput, "lattice", "basis rows are dependent");
  echelon_ = hf.h;
  transform_ = hf.u;
}

IntVector LatticeIso::to_gamma(const IntVector& exponent) const {
  if (exponent.size() != basis_.cols())
    throw Error(ErrorKind::DimensionMismatch, "lattice", "exponent length differs from generator count");
  auto d = solve_echelon(echelon_, exponent);
  if (!d) throw Error(ErrorKind::NonIntegralSolve, "lattice", "exponent is not an integer combination of the basis");
  IntVector c(rank());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t l = 0; l < rank(); ++l) c[i] += transform_(l, i) * (*d)[l];
  return c;
}

IntVector LatticeIso::from_gamma(const IntVector& k) const {
  if (k.size() != rank()) throw Error(ErrorKind::DimensionMismatch, "lattice", "gamma vector length");
  IntVector e(basis_.cols());
  for (std::size_t l = 0; l < rank(); ++l)
    for (std::size_t j = 0; j < basis_.cols(); ++j) e[j] += k[l] * basis_(l, j);
  return e;
}

RealVector LatticeIso::to_spectrum(const IntVector& k) const {
  if (k.size() != rank()) throw Error(ErrorKind::DimensionMismatch, "lattice", "gamma vector length");
  RealVector x(ambient_dim(), 0.0);
  for (std::size_t l = 0; l < rank(); ++l) {
    const double c = to_double(k[l]);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += c * omega_[l][j];
  }
  return x;
}

LatticeIso LatticeIso::reparameterized(const IntMatrix& v) const {
  if (v.rows() != rank() || v.cols() != rank())
    throw Error(ErrorKind::DimensionMismatch, "lattice", "reparameterization must be r×r");
  // gamma' = v gamma  =>  basis' = v^{-T} basis
  const IntMatrix vinv_t = unimodular_inverse(v).transpose();
  IntMatrix basis = vinv_t * basis_;
  std::vector<RealVector> omega(rank(), RealVector(ambient_dim(), 0.0));
  for (std::size_t l = 0; l < rank(); ++l)
    for (std::size_t q = 0; q < rank(); ++q) {
      const double c = to_double(vinv_t(l, q));
      for (std::size_t j = 0; j < ambient_dim(); ++j) omega[l][j] += c * omega_[q][j];
    }
  return LatticeIso(std::move(basis), std::move(omega));
}

void check_generators_independent(const std::vector<RealVector>& generators, int radius) {
  const std::size_t m = generators.size();
  if (m == 0) throw Error(ErrorKind::DegenerateGenerators, "lattice", "no generators");
  const std::size_t n = generators.front().size();
  double scale = 0.0;
  for (const auto& g : generators) {
    if (g.size() != n) throw Error(ErrorKind::DimensionMismatch, "lattice", "ragged generator matrix");
    for (double v : g) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) throw Error(ErrorKind::DegenerateGenerators, "lattice", "zero generator matrix");
  // Keep the exhaustive search bounded for large m.
  while (radius > 1 && std::pow(2.0 * radius + 1.0, static_cast<double>(m)) > 5e6) --radius;

  std::vector<int> v(m, -radius);
  const double tol = 1e-9 * scale;
  for (;;) {
    // Only vectors whose first nonzero entry is positive; -v is the same relation.
    auto first = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    if (first != v.end() && *first > 0) {
      double worst = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += v[i] * generators[i][j];
        worst = std::max(worst, std::abs(s));
      }
      if (worst < tol) {
        std::string rel;
        for (int x : v) rel += std::to_string(x) + " ";
        throw Error(ErrorKind::DegenerateGenerators, "lattice", "integer relation among generators: " + rel);
      }
    }
    std::size_t i = 0;
    while (i < m && v[i] == radius) v[i++] = -radius;
    if (i == m) break;
    ++v[i];
  }
}

LatticeIso build_iso(const IntMatrix& exponents, const std::vector<RealVector>& generators,
                     const std::optional<IntMatrix>& pinned_basis) {
  if (exponents.cols() != generators.size())
    throw Error(ErrorKind::DimensionMismatch, "lattice", "exponent length differs from generator count");
  check_generators_independent(generators);
  const HermiteForm hf = hermite_normal_form(exponents);
  IntMatrix basis = hf.h.top_rows(hf.rank);
  if (pinned_basis) {
    if (pinned_basis->cols() != exponents.cols() || pinned_basis->rows() != hf.rank)
      throw Error(ErrorKind::InvalidInput, "lattice", "pinned basis has the wrong shape for the exponent lattice");
    const HermiteForm pinned = hermite_normal_form(*pinned_basis);
    if (!(pinned.h.top_rows(pinned.rank) == basis) || pinned.rank != hf.rank)
      throw Error(ErrorKind::InvalidInput, "lattice", "pinned basis does not span the exponent lattice");
    basis = *pinned_basis;
  }
  const std::size_t n = generators.empty() ? 0 : generators.front().size();
  std::vector<RealVector> omega(basis.rows(), RealVector(n, 0.0));
  for (std::size_t l = 0; l < basis.rows(); ++l)
    for (std::size_t i = 0; i < basis.cols(); ++i) {
      const double c = to_double(basis(l, i));
      for (std::size_t j = 0; j < n; ++j) omega[l][j] += c * generators[i][j];
    }
  LatticeIso iso(std::move(basis), std::move(omega));
  for (std::size_t t = 0; t < exponents.rows(); ++t) {
    const IntVector k = iso.to_gamma(exponents.row(t));
    if (!(iso.from_gamma(k) == exponents.row(t)))
      throw Error(ErrorKind::NonIntegralSolve, "lattice", "round trip failed for spectrum point");
  }
  return iso;
}

double to_double(const BigInt& v) { return v.get_d(); }

long to_long(const BigInt& v) {
  if (!v.fits_slong_p()) throw Error(ErrorKind::InvalidInput, "lattice", "integer out of machine range");
  return v.get_si();
}

}  // namespace amoeba
