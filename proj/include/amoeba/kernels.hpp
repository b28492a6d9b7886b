#pragma once

// Data-parallel torus kernels.
//
// Both kernels evaluate F(node) = sum_k c_k * E_k(node) over a block of torus
// nodes, where E_k(node) = exp(i <k, theta_node>) comes from a precomputed
// phase table (split into real and imaginary planes, one row per term).
// The scalar versions are the reference; SIMD versions must agree with them to
// rounding (see tests/kernels_test.cpp).

#include <cstddef>
#include <span>
#include <string_view>

namespace amoeba::kernels {

struct TorusBlock {
  std::span<const double> coeff_re;  // one entry per term
  std::span<const double> coeff_im;
  const double* table_re = nullptr;  // terms rows, `stride` doubles apart
  const double* table_im = nullptr;
  std::size_t stride = 0;
  std::size_t nodes = 0;
};

struct MinResult {
  double modulus_sq;  // min |F|^2 over the block
  std::size_t node;   // first node attaining it
};

struct LogResult {
  double log_sum;     // sum of ln |F|^2 over the block (-inf if some |F| == 0)
  double min_modulus_sq;
};

using MinKernel = MinResult (*)(const TorusBlock&);
using LogKernel = LogResult (*)(const TorusBlock&);

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa best_available_isa();

struct KernelTable {
  Isa isa;
  MinKernel min_modulus;
  LogKernel log_modulus;
};

// Kernels for a specific ISA; throws if unavailable on this CPU.
const KernelTable& kernels_for(Isa isa);

// Process-wide selection: best available at startup, overridable by the
// AMOEBA_ISA environment variable ("scalar" / "avx2") or set_active_isa.
const KernelTable& active_kernels();
void set_active_isa(Isa isa);

namespace scalar {
MinResult min_modulus(const TorusBlock& block);
LogResult log_modulus(const TorusBlock& block);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
MinResult min_modulus(const TorusBlock& block);
LogResult log_modulus(const TorusBlock& block);
}  // namespace avx2
#endif

}  // namespace amoeba::kernels
