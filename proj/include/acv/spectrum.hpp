#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace acv {

struct SpectrumMeta {
  std::size_t p = 0;
  std::size_t T = 0;
  std::size_t lag = 0;
  std::string distribution;
  std::uint64_t seed = 0;
};

/// Eigenvalues of the normalized Gram matrix: ascending, nonnegative.
struct Spectrum {
  std::vector<double> values;
  SpectrumMeta meta;
};

/// Singular values of sqrt(T/p) X: elementwise square roots, still ascending.
inline std::vector<double> singular_values(const Spectrum& s) {
  std::vector<double> out;
  out.reserve(s.values.size());
  for (double v : s.values) out.push_back(v > 0.0 ? std::sqrt(v) : 0.0);
  return out;
}

}  // namespace acv
