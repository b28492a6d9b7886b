#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "amoeba/kernels.hpp"

namespace amoeba {

// Tensor grid of nodes_per_axis^r points on the real torus, theta_j = (j + shift) 2pi / N,
// with a precomputed phase table exp(i <k, theta>) for a fixed list of exponents k.
//
// Only the first min(r, 2) axes live in the table; further axes are folded into
// the coefficients slab by slab, which keeps memory at terms * N^2.
class TorusSampler {
 public:
  TorusSampler(std::vector<std::vector<long>> exponents, std::size_t rank, std::size_t nodes_per_axis,
               double shift = 0.0);

  std::size_t rank() const { return rank_; }
  std::size_t nodes_per_axis() const { return n_; }
  std::size_t total_nodes() const { return inner_ * outer_; }
  double shift() const { return shift_; }

  std::vector<double> node_angles(std::size_t flat_index) const;

  struct Min {
    double modulus;
    std::vector<double> theta;
  };
  // min over the grid of |sum_k c_k exp(i<k,theta>)|.
  Min min_modulus(std::span<const std::complex<double>> coeffs,
                  const kernels::KernelTable& kernels = kernels::active_kernels()) const;

  struct MeanLog {
    double mean_log;     // grid average of ln |sum|
    double min_modulus;  // smallest |sum| seen
  };
  MeanLog mean_log_modulus(std::span<const std::complex<double>> coeffs,
                           const kernels::KernelTable& kernels = kernels::active_kernels()) const;

 private:
  double angle(std::size_t index) const;
  void slab_coefficients(std::span<const std::complex<double>> coeffs, std::size_t outer, std::vector<double>& re,
                         std::vector<double>& im) const;

  std::vector<std::vector<long>> exponents_;
  std::size_t rank_;
  std::size_t n_;
  double shift_;
  std::size_t table_axes_;
  std::size_t inner_;
  std::size_t outer_;
  std::size_t stride_;
  std::vector<double> table_re_;
  std::vector<double> table_im_;
};

}  // namespace amoeba
