#include <cmath>
#include <limits>
#include <vector>

#include "amoeba/kernels.hpp"

namespace amoeba::kernels::scalar {
namespace {

inline double modulus_sq_at(const TorusBlock& b, std::size_t node) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < b.coeff_re.size(); ++k) {
    const double er = b.table_re[k * b.stride + node];
    const double ei = b.table_im[k * b.stride + node];
    re += b.coeff_re[k] * er - b.coeff_im[k] * ei;
    im += b.coeff_re[k] * ei + b.coeff_im[k] * er;
  }
  return re * re + im * im;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

MinResult min_modulus(const TorusBlock& b) {
  MinResult best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t node = 0; node < b.nodes; ++node) {
    const double m = modulus_sq_at(b, node);
    if (m < best.modulus_sq) best = {m, node};
  }
  return best;
}

LogResult log_modulus(const TorusBlock& b) {
  std::vector<double> logs(b.nodes);
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t node = 0; node < b.nodes; ++node) {
    const double m = modulus_sq_at(b, node);
    mn = std::min(mn, m);
    logs[node] = std::log(m);
  }
  return {pairwise_sum(logs.data(), logs.size()), mn};
}

}  // namespace amoeba::kernels::scalar
