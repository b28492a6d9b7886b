#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "amoeba/kernels.hpp"

namespace amoeba::kernels {
namespace {

const KernelTable kScalar{Isa::Scalar, &scalar::min_modulus, &scalar::log_modulus};
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable kAvx2{Isa::Avx2, &avx2::min_modulus, &avx2::log_modulus};
#endif

Isa initial_isa() {
  if (const char* env = std::getenv("AMOEBA_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
  }
  return best_available_isa();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&kernels_for(initial_isa())};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa best_available_isa() { return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) throw std::runtime_error("kernel ISA not available: " + std::string(isa_name(isa)));
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::Avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

void set_active_isa(Isa isa) { active_slot().store(&kernels_for(isa), std::memory_order_release); }

}  // namespace amoeba::kernels
