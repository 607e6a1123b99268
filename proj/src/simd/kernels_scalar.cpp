#include "acv/simd/kernels.hpp"

namespace acv::simd {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void rank2_scalar(double* row, double a, const double* x, double b, const double* y,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) row[i] -= a * x[i] + b * y[i];
}

constexpr KernelTable kScalar{Isa::Scalar, "scalar", dot_scalar, axpy_scalar, rank2_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace acv::simd
