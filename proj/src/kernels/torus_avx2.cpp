// Compiled with -mavx2 -mfma; only called after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "amoeba/kernels.hpp"

namespace amoeba::kernels::avx2 {
namespace {

inline __m256d modulus_sq4(const TorusBlock& b, std::size_t node) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  for (std::size_t k = 0; k < b.coeff_re.size(); ++k) {
    const __m256d cr = _mm256_set1_pd(b.coeff_re[k]);
    const __m256d ci = _mm256_set1_pd(b.coeff_im[k]);
    const __m256d er = _mm256_loadu_pd(b.table_re + k * b.stride + node);
    const __m256d ei = _mm256_loadu_pd(b.table_im + k * b.stride + node);
    re = _mm256_fmadd_pd(cr, er, re);
    re = _mm256_fnmadd_pd(ci, ei, re);
    im = _mm256_fmadd_pd(cr, ei, im);
    im = _mm256_fmadd_pd(ci, er, im);
  }
  return _mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im));
}

inline double modulus_sq1(const TorusBlock& b, std::size_t node) {
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

}  // namespace

MinResult min_modulus(const TorusBlock& b) {
  const std::size_t body = b.nodes & ~std::size_t{3};
  MinResult best{std::numeric_limits<double>::infinity(), 0};
  if (body > 0) {
    __m256d minv = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d mini = _mm256_setzero_pd();
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d four = _mm256_set1_pd(4.0);
    for (std::size_t node = 0; node < body; node += 4) {
      const __m256d m = modulus_sq4(b, node);
      const __m256d lt = _mm256_cmp_pd(m, minv, _CMP_LT_OQ);
      minv = _mm256_blendv_pd(minv, m, lt);
      mini = _mm256_blendv_pd(mini, idx, lt);
      idx = _mm256_add_pd(idx, four);
    }
    alignas(32) double v[4];
    alignas(32) double i[4];
    _mm256_store_pd(v, minv);
    _mm256_store_pd(i, mini);
    for (int lane = 0; lane < 4; ++lane) {
      const auto node = static_cast<std::size_t>(i[lane]);
      if (v[lane] < best.modulus_sq || (v[lane] == best.modulus_sq && node < best.node)) best = {v[lane], node};
    }
  }
  for (std::size_t node = body; node < b.nodes; ++node) {
    const double m = modulus_sq1(b, node);
    if (m < best.modulus_sq) best = {m, node};
  }
  return best;
}

// Sum of logs as the log of a running product; each lane is renormalized to
// [1, 2) after every multiply and its binary exponent accumulated separately.
LogResult log_modulus(const TorusBlock& b) {
  const std::size_t body = b.nodes & ~std::size_t{3};
  double log_sum = 0.0;
  double mn = std::numeric_limits<double>::infinity();
  if (body > 0) {
    const __m256i mantissa_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    __m256d prod = _mm256_set1_pd(1.0);
    __m256i exps = _mm256_setzero_si256();
    __m256d minv = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    for (std::size_t node = 0; node < body; node += 4) {
      const __m256d m = modulus_sq4(b, node);
      minv = _mm256_min_pd(minv, m);
      prod = _mm256_mul_pd(prod, m);
      const __m256i bits = _mm256_castpd_si256(prod);
      exps = _mm256_add_epi64(exps, _mm256_srli_epi64(bits, 52));
      prod = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mantissa_mask), one_bits));
    }
    alignas(32) double p[4];
    alignas(32) std::int64_t e[4];
    alignas(32) double v[4];
    _mm256_store_pd(p, prod);
    _mm256_store_si256(reinterpret_cast<__m256i*>(e), exps);
    _mm256_store_pd(v, minv);
    const auto steps = static_cast<std::int64_t>(body / 4);
    for (int lane = 0; lane < 4; ++lane) {
      mn = std::min(mn, v[lane]);
      log_sum += std::log(p[lane]) + static_cast<double>(e[lane] - 1023 * steps) * std::numbers::ln2;
    }
  }
  for (std::size_t node = body; node < b.nodes; ++node) {
    const double m = modulus_sq1(b, node);
    mn = std::min(mn, m);
    log_sum += std::log(m);
  }
  if (mn == 0.0) log_sum = -std::numeric_limits<double>::infinity();
  return {log_sum, mn};
}

}  // namespace amoeba::kernels::avx2
