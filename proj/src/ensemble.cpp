#include "acv/ensemble.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/core.h>

#include "acv/error.hpp"
#include "acv/quadrature.hpp"
#include "acv/rng.hpp"

namespace acv::ensemble {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kDegenerateVariance = 1e-12;
constexpr double kQuadTol = 1e-10;

double student_scale(double nu) { return std::sqrt((nu - 2.0) / nu); }

// Density of the standardized (unit-variance) Student t law.
double student_std_pdf(double nu, double x) {
  const double a = student_scale(nu);
  const boost::math::students_t_distribution<double> t(nu);
  return boost::math::pdf(t, x / a) / a;
}

// E[|e|^order * 1{|e| <= c}] under the untruncated standardized law.
double truncated_abs_moment(const EntryDistribution& base, double c, int order) {
  const double k = order;
  switch (base.family) {
    case Family::Rademacher:
      return c >= 1.0 ? 1.0 : 0.0;
    case Family::Uniform: {
      const double m = std::min(c, kSqrt3);
      return std::pow(m, k + 1.0) / ((k + 1.0) * kSqrt3);
    }
    case Family::Gaussian: {
      if (order == 2) {
        const double phi = std::exp(-0.5 * c * c) / std::sqrt(2.0 * std::numbers::pi);
        return std::erf(c / std::numbers::sqrt2) - 2.0 * c * phi;
      }
      auto f = [k](double x) {
        return std::pow(x, k) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
      };
      return 2.0 * quad::integrate(f, 0.0, c, kQuadTol);
    }
    case Family::StudentT: {
      const double nu = base.nu;
      auto f = [nu, k](double x) { return std::pow(x, k) * student_std_pdf(nu, x); };
      return 2.0 * quad::integrate(f, 0.0, c, kQuadTol);
    }
  }
  throw ConfigError("unknown family");
}

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError(fmt::format("invalid {} '{}'", what, text));
  }
  return value;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Gaussian: return "gaussian";
    case Family::Rademacher: return "rademacher";
    case Family::Uniform: return "uniform";
    case Family::StudentT: return "student_t";
  }
  return "unknown";
}

std::string EntryDistribution::tag() const {
  std::string out(family_name(family));
  if (family == Family::StudentT) out += fmt::format(":{}", nu);
  if (truncate_at) out += fmt::format("@{}", *truncate_at);
  return out;
}

EntryDistribution parse_distribution(std::string_view text) {
  EntryDistribution dist;
  std::string_view head = text;
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    head = text.substr(0, at);
    dist.truncate_at = parse_number(text.substr(at + 1), "truncation threshold");
  }
  std::string_view name = head;
  std::optional<double> nu;
  if (const auto colon = head.find(':'); colon != std::string_view::npos) {
    name = head.substr(0, colon);
    nu = parse_number(head.substr(colon + 1), "degrees of freedom");
  }
  if (name == "gaussian") dist.family = Family::Gaussian;
  else if (name == "rademacher") dist.family = Family::Rademacher;
  else if (name == "uniform") dist.family = Family::Uniform;
  else if (name == "student_t") dist.family = Family::StudentT;
  else throw ConfigError(fmt::format("unknown distribution family '{}'", name));

  if (dist.family == Family::StudentT) {
    if (!nu) throw ConfigError("student_t requires degrees of freedom, e.g. student_t:5");
    dist.nu = *nu;
  } else if (nu) {
    throw ConfigError(fmt::format("family '{}' takes no parameter", name));
  }
  validate(dist);
  return dist;
}

void validate(const EntryDistribution& dist) {
  if (dist.family == Family::StudentT && !(dist.nu > 4.0)) {
    throw ConfigError(fmt::format("student_t requires nu > 4 (got {})", dist.nu));
  }
  if (dist.truncate_at && !(*dist.truncate_at > 0.0)) {
    throw ConfigError(fmt::format("truncation threshold must be > 0 (got {})", *dist.truncate_at));
  }
}

TruncationMoments truncated_moments(const EntryDistribution& base, double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("truncation threshold must be > 0");
  EntryDistribution plain = base;
  plain.truncate_at.reset();
  validate(plain);
  TruncationMoments m;
  m.mean = 0.0;
  m.variance = truncated_abs_moment(plain, threshold, 2);
  return m;
}

EntryDistribution truncate_spec(const EntryDistribution& dist, double threshold) {
  const auto m = truncated_moments(dist, threshold);
  if (m.variance < kDegenerateVariance) {
    throw DegenerateTruncationError(fmt::format(
        "truncating {} at {} leaves variance {:.3g}", dist.tag(), threshold, m.variance));
  }
  EntryDistribution out = dist;
  out.truncate_at = threshold;
  return out;
}

double entry_moment(const EntryDistribution& dist, int order) {
  validate(dist);
  if (order < 1) throw DomainError("moment order must be >= 1");
  const double k = order;

  if (dist.truncate_at) {
    EntryDistribution plain = dist;
    plain.truncate_at.reset();
    const auto m = truncated_moments(plain, *dist.truncate_at);
    if (m.variance < kDegenerateVariance) {
      throw DegenerateTruncationError("degenerate truncated law");
    }
    // mean is 0, so |(e 1{|e|<=c} - 0) / sd|^k = |e|^k 1{|e|<=c} / sd^k.
    return truncated_abs_moment(plain, *dist.truncate_at, order) / std::pow(m.variance, k / 2.0);
  }

  switch (dist.family) {
    case Family::Rademacher:
      return 1.0;
    case Family::Uniform:
      return std::pow(kSqrt3, k) / (k + 1.0);
    case Family::Gaussian:
      return std::pow(2.0, k / 2.0) * std::tgamma((k + 1.0) / 2.0) / std::sqrt(std::numbers::pi);
    case Family::StudentT: {
      const double nu = dist.nu;
      if (!(k < nu)) {
        throw DomainError(fmt::format("E|t|^{} diverges for nu = {}", order, nu));
      }
      const double log_raw = 0.5 * k * std::log(nu) + std::lgamma((k + 1.0) / 2.0) +
                             std::lgamma((nu - k) / 2.0) - 0.5 * std::log(std::numbers::pi) -
                             std::lgamma(nu / 2.0);
      return std::exp(log_raw) * std::pow(student_scale(nu), k);
    }
  }
  throw ConfigError("unknown family");
}

double light_truncation_threshold(std::size_t T, std::optional<double> eta) {
  const double t = static_cast<double>(T);
  const double e = eta.value_or(std::pow(t, -0.125));
  return e * std::pow(t, 0.25);
}

double heavy_truncation_threshold(std::size_t T, std::optional<double> delta) {
  const double t = static_cast<double>(T);
  const double d = delta.value_or(std::pow(t, -0.25));
  return d * std::sqrt(t);
}

EntrySampler make_sampler(const EntryDistribution& dist) {
  validate(dist);
  EntrySampler s;
  s.dist_ = dist;
  if (dist.family == Family::StudentT) s.student_scale_ = student_scale(dist.nu);
  if (dist.truncate_at) {
    const auto m = truncated_moments(dist, *dist.truncate_at);
    if (m.variance < kDegenerateVariance) {
      throw DegenerateTruncationError(
          fmt::format("truncating at {} leaves variance {:.3g}", *dist.truncate_at, m.variance));
    }
    s.trunc_mean_ = m.mean;
    s.trunc_sd_ = std::sqrt(m.variance);
  }
  return s;
}

double EntrySampler::base_from_uniform(double u) const {
  switch (dist_.family) {
    case Family::Gaussian:
      return rng::normal_quantile(u);
    case Family::Rademacher:
      return u < 0.5 ? -1.0 : 1.0;
    case Family::Uniform:
      return kSqrt3 * (2.0 * u - 1.0);
    case Family::StudentT: {
      const boost::math::students_t_distribution<double> t(dist_.nu);
      return student_scale_ * boost::math::quantile(t, u);
    }
  }
  return 0.0;
}

double EntrySampler::from_uniform(double u) const {
  const double e = base_from_uniform(u);
  if (!dist_.truncate_at) return e;
  const double kept = std::abs(e) <= *dist_.truncate_at ? e : 0.0;
  return (kept - trunc_mean_) / trunc_sd_;
}

double EntrySampler::draw(std::uint64_t seed, std::uint64_t row, std::uint64_t col) const {
  return from_uniform(rng::counter_uniform(seed, row, col));
}

std::optional<double> EntrySampler::support_bound() const {
  if (dist_.truncate_at) return (*dist_.truncate_at + std::abs(trunc_mean_)) / trunc_sd_;
  switch (dist_.family) {
    case Family::Rademacher: return 1.0;
    case Family::Uniform: return kSqrt3;
    default: return std::nullopt;
  }
}

EpsilonPanel sample_panel(const EntrySampler& sampler, std::size_t p, std::size_t T,
                          std::size_t lag, std::uint64_t seed, std::size_t max_entries) {
  if (p < 1 || T < 1) throw ConfigError("panel requires p >= 1 and T >= 1");
  const std::size_t horizon = T + lag;
  if (horizon < T || p > max_entries / horizon) {
    throw ResourceError(fmt::format("panel {} x {} exceeds the limit of {} entries", p, horizon,
                                    max_entries));
  }
  EpsilonPanel panel{p, T, lag, seed, Matrix(p, horizon)};
  for (std::size_t i = 0; i < p; ++i) {
    auto row = panel.entries.row(i);
    for (std::size_t t = 0; t < horizon; ++t) row[t] = sampler.draw(seed, i, t);
  }
  return panel;
}

}  // namespace acv::ensemble
