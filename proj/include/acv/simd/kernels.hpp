#pragma once

// Data-parallel inner loops shared by the autocovariance product, the Gram
// product and the Householder reduction. Each ISA provides a KernelTable; the
// scalar table is the reference every other table is tested against.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace acv::simd {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  const char* name;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // row[i] -= a * x[i] + b * y[i]
  void (*rank2)(double* row, double a, const double* x, double b, const double* y,
                std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the ISA was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// Every table usable on this host, scalar first.
std::vector<const KernelTable*> available_kernels();

/// Kernel table used by the library. Chosen once per process: the best
/// available ISA, unless ACV_SIMD=scalar|avx2|neon forces one.
const KernelTable& active();

/// Overrides the process-wide choice (tests, benchmarks). Not thread-safe
/// against concurrent kernel use.
void set_active(const KernelTable& table);

std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace acv::simd
