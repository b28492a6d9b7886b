#include "amoeba/torus.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "amoeba/errors.hpp"

namespace amoeba {

TorusSampler::TorusSampler(std::vector<std::vector<long>> exponents, std::size_t rank, std::size_t nodes_per_axis,
                           double shift)
    : exponents_(std::move(exponents)), rank_(rank), n_(nodes_per_axis), shift_(shift) {
  if (n_ < 1) throw Error(ErrorKind::InvalidInput, "ronkin", "torus grid needs at least one node per axis");
  for (const auto& k : exponents_)
    if (k.size() != rank_) throw Error(ErrorKind::DimensionMismatch, "ronkin", "exponent length differs from rank");
  table_axes_ = std::min<std::size_t>(rank_, 2);
  inner_ = 1;
  for (std::size_t a = 0; a < table_axes_; ++a) inner_ *= n_;
  outer_ = 1;
  for (std::size_t a = table_axes_; a < rank_; ++a) outer_ *= n_;
  stride_ = (inner_ + 3) & ~std::size_t{3};

  table_re_.assign(exponents_.size() * stride_, 0.0);
  table_im_.assign(exponents_.size() * stride_, 0.0);
  const auto nn = static_cast<long>(n_);
  for (std::size_t t = 0; t < exponents_.size(); ++t) {
    const auto& k = exponents_[t];
    long ksum = 0;
    for (std::size_t a = 0; a < table_axes_; ++a) ksum += k[a];
    for (std::size_t node = 0; node < inner_; ++node) {
      long q = 0;
      std::size_t rest = node;
      for (std::size_t a = 0; a < table_axes_; ++a) {
        const auto j = static_cast<long>(rest % n_);
        rest /= n_;
        q = (q + (k[a] % nn) * j) % nn;
      }
      const double phase = 2.0 * std::numbers::pi * (static_cast<double>(q) + shift_ * static_cast<double>(ksum)) /
                           static_cast<double>(n_);
      table_re_[t * stride_ + node] = std::cos(phase);
      table_im_[t * stride_ + node] = std::sin(phase);
    }
  }
}

double TorusSampler::angle(std::size_t index) const {
  return 2.0 * std::numbers::pi * (static_cast<double>(index) + shift_) / static_cast<double>(n_);
}

std::vector<double> TorusSampler::node_angles(std::size_t flat_index) const {
  std::vector<double> theta(rank_);
  std::size_t rest = flat_index;
  for (std::size_t a = 0; a < rank_; ++a) {
    theta[a] = angle(rest % n_);
    rest /= n_;
  }
  return theta;
}

void TorusSampler::slab_coefficients(std::span<const std::complex<double>> coeffs, std::size_t outer,
                                     std::vector<double>& re, std::vector<double>& im) const {
  re.resize(coeffs.size());
  im.resize(coeffs.size());
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    std::complex<double> c = coeffs[t];
    std::size_t rest = outer;
    for (std::size_t a = table_axes_; a < rank_; ++a) {
      const double phase = static_cast<double>(exponents_[t][a]) * angle(rest % n_);
      rest /= n_;
      c *= std::polar(1.0, phase);
    }
    re[t] = c.real();
    im[t] = c.imag();
  }
}

TorusSampler::Min TorusSampler::min_modulus(std::span<const std::complex<double>> coeffs,
                                            const kernels::KernelTable& kernels) const {
  if (coeffs.size() != exponents_.size()) throw Error(ErrorKind::DimensionMismatch, "ronkin", "coefficient count");
  std::vector<double> re, im;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_flat = 0;
  for (std::size_t o = 0; o < outer_; ++o) {
    slab_coefficients(coeffs, o, re, im);
    const kernels::TorusBlock block{re, im, table_re_.data(), table_im_.data(), stride_, inner_};
    const kernels::MinResult m = kernels.min_modulus(block);
    if (m.modulus_sq < best) {
      best = m.modulus_sq;
      best_flat = o * inner_ + m.node;
    }
  }
  return {std::sqrt(best), node_angles(best_flat)};
}

TorusSampler::MeanLog TorusSampler::mean_log_modulus(std::span<const std::complex<double>> coeffs,
                                                     const kernels::KernelTable& kernels) const {
  if (coeffs.size() != exponents_.size()) throw Error(ErrorKind::DimensionMismatch, "ronkin", "coefficient count");
  std::vector<double> re, im;
  double log_sum = 0.0;
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t o = 0; o < outer_; ++o) {
    slab_coefficients(coeffs, o, re, im);
    const kernels::TorusBlock block{re, im, table_re_.data(), table_im_.data(), stride_, inner_};
    const kernels::LogResult r = kernels.log_modulus(block);
    log_sum += r.log_sum;
    mn = std::min(mn, r.min_modulus_sq);
  }
  return {0.5 * log_sum / static_cast<double>(total_nodes()), std::sqrt(mn)};
}

}  // namespace amoeba
