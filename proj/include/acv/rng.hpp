#pragma once

// Counter-based randomness: every draw is a pure function of (seed, row,
// column), so panels can be filled in any order or in parallel.

#include <cstdint>

namespace acv::rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Order-sensitive combination of two words.
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

constexpr std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
  return mix64(mix64(seed, row), col);
}

/// Uniform on the open interval (0, 1) with 53 random bits: (k + 1/2) / 2^53.
constexpr double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

constexpr double counter_uniform(std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
  return to_open_unit(counter_bits(seed, row, col));
}

/// Standard normal quantile. Acklam's rational approximation (relative error
/// below 1.15e-9) followed by one Halley step against erfc, which brings the
/// result to near double precision.
double normal_quantile(double u);

}  // namespace acv::rng
