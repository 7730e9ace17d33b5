#include <atomic>
#include <stdexcept>

#include "fermipulse/kernels.hpp"

namespace fermipulse::kernels {

bool avx2_kernel_built();

namespace {

bool detect_avx2() {
  if (!avx2_kernel_built()) {
    return false;
  }
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

// -1: automatic, otherwise a forced Isa value.
std::atomic<int> g_forced{-1};

}  // namespace

bool avx2_available() {
  static const bool available = detect_avx2();
  return available;
}

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) {
    return static_cast<Isa>(forced);
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) {
    throw std::runtime_error("force_isa: AVX2/FMA not supported on this CPU");
  }
  g_forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { g_forced.store(-1, std::memory_order_relaxed); }

std::complex<double> chirp_panels(const ChirpProblem& p) {
  if (active_isa() == Isa::Avx2 && p.order % 4 == 0) {
    return chirp_panels_avx2(p);
  }
  return chirp_panels_scalar(p);
}

}  // namespace fermipulse::kernels
