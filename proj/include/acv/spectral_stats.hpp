#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "acv/limit_laws.hpp"
#include "acv/spectrum.hpp"

namespace acv::stats {

/// Exact Kolmogorov–Smirnov distance between the empirical cdf of `values`
/// (any order) and the law: max_i max(|i/p - F(x_i)|, |(i-1)/p - F(x_i)|).
/// DomainError on an empty sample.
double ks_distance(std::span<const double> values, laws::LimitLaw law);

inline double ks_distance(const Spectrum& spec, laws::LimitLaw law) {
  return ks_distance(spec.values, law);
}

/// sup_x |F_a(x) - F_b(x)| between two empirical cdfs.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// (1/p) sum lambda^k, i.e. (1/p) tr A^k.
double empirical_moment(std::span<const double> values, int k);

inline double empirical_moment(const Spectrum& spec, int k) {
  return empirical_moment(spec.values, k);
}

struct MomentReport {
  std::vector<int> orders;
  std::vector<double> empirical;
  std::vector<double> theoretical;  // Catalan numbers
  std::vector<double> deviation;    // empirical - theoretical
};

MomentReport moment_report(const Spectrum& spec, std::span<const int> orders);

struct Extremes {
  double lambda_max = 0.0;
  std::optional<double> lambda_min_positive;
};

/// Values at or below 1e-10 * max(1, lambda_max) count as zero.
Extremes extremes(std::span<const double> values);

inline Extremes extremes(const Spectrum& spec) { return extremes(spec.values); }

inline constexpr int kDefaultBins = 64;
inline constexpr double kHistogramFloor = 4.5;

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double empirical_density = 0.0;
  double theory_density = 0.0;
};

struct HistogramTable {
  std::vector<HistogramBin> bins;
};

/// Equal-width bins over [0, max(4.5, lambda_max)], right edge closed.
HistogramTable histogram(std::span<const double> values, int bins, laws::LimitLaw law);

/// CSV with header bin_lo,bin_hi,count,emp_density,theory_density.
void write_csv(std::ostream& out, const HistogramTable& table);

}  // namespace acv::stats
