#include "amoeba/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "amoeba/errors.hpp"

namespace amoeba::lp {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  // Row `rows_` is the objective row holding reduced costs (maximization: entering if > 0).
  double& cost(std::size_t j) { return at(rows_, j); }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
};

// Runs simplex iterations over columns [0, active_cols). Returns false when unbounded.
bool run(Tableau& t, std::vector<std::size_t>& basis, std::size_t active_cols, double eps) {
  for (std::size_t iter = 0; iter < 50000; ++iter) {
    std::size_t enter = active_cols;
    for (std::size_t j = 0; j < active_cols; ++j)
      if (t.cost(j) > eps) {
        enter = j;
        break;
      }
    if (enter == active_cols) return true;
    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= eps) continue;
      const double ratio = t.rhs(i) / a;
      if (ratio < best - eps || (std::abs(ratio - best) <= eps && leave < t.rows() && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == t.rows()) return false;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
  throw Error(ErrorKind::NumericallyAmbiguous, "simplex", "iteration limit reached");
}

}  // namespace

Solution maximize(const std::vector<double>& objective, const std::vector<Constraint>& constraints, double eps) {
  const std::size_t nvar = objective.size();
  const std::size_t m = constraints.size();

  std::size_t slack_count = 0;
  std::size_t art_count = 0;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != nvar) throw Error(ErrorKind::DimensionMismatch, "simplex", "constraint width");
    const bool flip = c.rhs < 0;
    Relation rel = c.relation;
    if (flip && rel != Relation::Equal) rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    if (rel != Relation::Equal) ++slack_count;
    if (rel != Relation::LessEqual) ++art_count;
  }
  const std::size_t art_begin = nvar + slack_count;
  const std::size_t total = art_begin + art_count;
  Tableau t(m, total);
  std::vector<std::size_t> basis(m);

  std::size_t slack = nvar;
  std::size_t art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = constraints[i];
    const double sign = c.rhs < 0 ? -1.0 : 1.0;
    Relation rel = c.relation;
    if (sign < 0 && rel != Relation::Equal)
      rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    for (std::size_t j = 0; j < nvar; ++j) t.at(i, j) = sign * c.coeffs[j];
    t.rhs(i) = sign * c.rhs;
    if (rel == Relation::LessEqual) {
      t.at(i, slack) = 1.0;
      basis[i] = slack++;
    } else {
      if (rel == Relation::GreaterEqual) t.at(i, slack++) = -1.0;
      t.at(i, art) = 1.0;
      basis[i] = art++;
    }
  }

  // Phase 1: maximize -sum(artificials).
  if (art_count > 0) {
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art_begin) continue;
      for (std::size_t j = 0; j <= total; ++j)
        if (j < art_begin || j == total) t.at(m, j) += t.at(i, j);
    }
    run(t, basis, art_begin, eps);
    // The objective row rhs holds the remaining sum of artificials.
    double scale = 1.0;
    for (const auto& c : constraints) scale = std::max(scale, std::abs(c.rhs));
    if (t.at(m, total) > 1e-9 * scale) return Solution{Status::Infeasible, 0.0, {}};
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j)
        if (std::abs(t.at(i, j)) > 1e-9) {
          t.pivot(i, j);
          basis[i] = j;
          break;
        }
    }
  }

  for (std::size_t j = 0; j <= total; ++j) t.at(m, j) = 0.0;
  for (std::size_t j = 0; j < nvar; ++j) t.cost(j) = objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = basis[i];
    if (b >= art_begin) continue;
    const double cb = t.cost(b);
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= total; ++j) t.at(m, j) -= cb * t.at(i, j);
  }
  if (!run(t, basis, art_begin, eps)) return Solution{Status::Unbounded, 0.0, {}};

  Solution sol{Status::Optimal, 0.0, std::vector<double>(nvar, 0.0)};
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < nvar) sol.x[basis[i]] = t.rhs(i);
  for (std::size_t j = 0; j < nvar; ++j) sol.value += objective[j] * sol.x[j];
  return sol;
}

}  // namespace amoeba::lp
