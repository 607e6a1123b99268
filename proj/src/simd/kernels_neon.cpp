#include "acv/simd/kernels.hpp"

#if defined(ACV_HAVE_NEON) && defined(__aarch64__)
#include <arm_neon.h>

namespace acv::simd {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void rank2_neon(double* row, double a, const double* x, double b, const double* y,
                std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t t = vmulq_f64(vb, vld1q_f64(y + i));
    t = vfmaq_f64(t, va, vld1q_f64(x + i));
    vst1q_f64(row + i, vsubq_f64(vld1q_f64(row + i), t));
  }
  for (; i < n; ++i) row[i] -= a * x[i] + b * y[i];
}

constexpr KernelTable kNeon{Isa::Neon, "neon", dot_neon, axpy_neon, rank2_neon};

}  // namespace

// Advanced SIMD is mandatory on AArch64.
const KernelTable* neon_kernels() { return &kNeon; }

}  // namespace acv::simd

#else

namespace acv::simd {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace acv::simd

#endif
