#pragma once

// Entry laws for the noise panel and the panel sampler itself. Every law is
// standardized to mean 0 and variance 1, optionally after the
// truncate / center / rescale transform.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "acv/matrix.hpp"

namespace acv::ensemble {

enum class Family { Gaussian, Rademacher, Uniform, StudentT };

std::string_view family_name(Family f);

struct EntryDistribution {
  Family family = Family::Gaussian;
  double nu = 0.0;                     // StudentT degrees of freedom, > 4
  std::optional<double> truncate_at;   // threshold on the standardized draw

  static EntryDistribution gaussian() { return {Family::Gaussian, 0.0, std::nullopt}; }
  static EntryDistribution rademacher() { return {Family::Rademacher, 0.0, std::nullopt}; }
  static EntryDistribution uniform() { return {Family::Uniform, 0.0, std::nullopt}; }
  static EntryDistribution student_t(double nu) { return {Family::StudentT, nu, std::nullopt}; }

  /// Canonical compact form, e.g. "gaussian", "student_t:5@2.8284271247461903".
  std::string tag() const;

  friend bool operator==(const EntryDistribution&, const EntryDistribution&) = default;
};

/// Parses the compact form produced by tag(): family[:nu][@threshold].
EntryDistribution parse_distribution(std::string_view text);

/// Throws ConfigError unless nu > 4 (StudentT) and any threshold is > 0.
void validate(const EntryDistribution& dist);

/// Mean and variance of e * 1{|e| <= threshold} for the untruncated
/// standardized law. All families are symmetric, so the mean is exactly 0.
struct TruncationMoments {
  double mean = 0.0;
  double variance = 1.0;
};

TruncationMoments truncated_moments(const EntryDistribution& base, double threshold);

/// Law of (e * 1{|e| <= threshold} - mean) / sd. Throws
/// DegenerateTruncationError when the truncated variance is below 1e-12.
EntryDistribution truncate_spec(const EntryDistribution& dist, double threshold);

/// E|e|^order under the standardized (possibly truncated) law. Untruncated
/// StudentT(nu) requires order < nu (DomainError otherwise).
double entry_moment(const EntryDistribution& dist, int order);

/// Truncation level eta * T^{1/4}; eta defaults to T^{-1/8}.
double light_truncation_threshold(std::size_t T, std::optional<double> eta = std::nullopt);

/// Truncation level delta * T^{1/2}; delta defaults to T^{-1/4}.
double heavy_truncation_threshold(std::size_t T, std::optional<double> delta = std::nullopt);

/// Immutable, thread-safe standardized sampler.
class EntrySampler {
 public:
  const EntryDistribution& distribution() const { return dist_; }

  /// Standardized draw at a stream position.
  double draw(std::uint64_t seed, std::uint64_t row, std::uint64_t col) const;

  /// Draw as a function of a single uniform in (0, 1).
  double from_uniform(double u) const;

  /// Sharp bound B with |draw| <= B, when the law is bounded.
  std::optional<double> support_bound() const;

 private:
  friend EntrySampler make_sampler(const EntryDistribution& dist);

  double base_from_uniform(double u) const;

  EntryDistribution dist_;
  double student_scale_ = 1.0;
  double trunc_mean_ = 0.0;
  double trunc_sd_ = 1.0;
};

EntrySampler make_sampler(const EntryDistribution& dist);

struct EpsilonPanel {
  std::size_t p = 0;
  std::size_t T = 0;
  std::size_t lag = 0;
  std::uint64_t seed = 0;
  Matrix entries;  // p x (T + lag); column t holds the noise vector at time t + 1

  std::size_t horizon() const { return T + lag; }
};

inline constexpr std::size_t kDefaultMaxPanelEntries = std::size_t{1} << 28;

/// Entry (i, t) is sampler.draw(seed, i, t), independent of fill order.
/// Throws ResourceError when p * (T + lag) exceeds max_entries.
EpsilonPanel sample_panel(const EntrySampler& sampler, std::size_t p, std::size_t T,
                          std::size_t lag, std::uint64_t seed,
                          std::size_t max_entries = kDefaultMaxPanelEntries);

}  // namespace acv::ensemble
