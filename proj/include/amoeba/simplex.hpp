#pragma once

#include <vector>

namespace amoeba::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

// Maximizes objective·x subject to the constraints and x >= 0.
// Dense two-phase tableau simplex with Bland's rule; meant for a few dozen rows.
Solution maximize(const std::vector<double>& objective, const std::vector<Constraint>& constraints,
                  double eps = 1e-12);

}  // namespace amoeba::lp
