#include "acv/limit_laws.hpp"

#include <algorithm>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/core.h>

#include "acv/combinatorics.hpp"
#include "acv/error.hpp"

namespace acv::laws {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMomentTol = 1e-10;
constexpr double kQuantileTol = 1e-12;

// Semicircle distribution function on [-2, 2].
double semicircle_cdf(double u) {
  if (u <= -2.0) return 0.0;
  if (u >= 2.0) return 1.0;
  return 0.5 + u * std::sqrt(4.0 - u * u) / (4.0 * kPi) + std::asin(0.5 * u) / kPi;
}

}  // namespace

std::string_view law_name(LimitLaw law) {
  switch (law) {
    case LimitLaw::Semicircle: return "semicircle";
    case LimitLaw::Quarter: return "quarter";
    case LimitLaw::Squared: return "squared";
  }
  return "unknown";
}

std::optional<LimitLaw> parse_law(std::string_view name) {
  if (name == "semicircle") return LimitLaw::Semicircle;
  if (name == "quarter") return LimitLaw::Quarter;
  if (name == "squared") return LimitLaw::Squared;
  return std::nullopt;
}

Support support(LimitLaw law) {
  switch (law) {
    case LimitLaw::Semicircle: return {-2.0, 2.0};
    case LimitLaw::Quarter: return {0.0, 2.0};
    case LimitLaw::Squared: return {0.0, 4.0};
  }
  return {0.0, 0.0};
}

double law_pdf(LimitLaw law, double x) {
  switch (law) {
    case LimitLaw::Semicircle:
      if (x < -2.0 || x > 2.0) return 0.0;
      return std::sqrt(4.0 - x * x) / (2.0 * kPi);
    case LimitLaw::Quarter:
      if (x <= 0.0 || x > 2.0) return 0.0;
      return std::sqrt(4.0 - x * x) / kPi;
    case LimitLaw::Squared:
      if (x <= 0.0 || x > 4.0) return 0.0;
      return std::sqrt(1.0 / x - 0.25) / kPi;
  }
  return 0.0;
}

double law_cdf(LimitLaw law, double x) {
  switch (law) {
    case LimitLaw::Semicircle:
      return semicircle_cdf(x);
    case LimitLaw::Quarter:
      if (x <= 0.0) return 0.0;
      return 2.0 * semicircle_cdf(x) - 1.0;
    case LimitLaw::Squared:
      if (x <= 0.0) return 0.0;
      if (x >= 4.0) return 1.0;
      return std::sqrt(x * (4.0 - x)) / (2.0 * kPi) + (2.0 / kPi) * std::asin(0.5 * std::sqrt(x));
  }
  return 0.0;
}

double law_quantile(LimitLaw law, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError(fmt::format("quantile level {} outside [0, 1]", u));
  }
  auto [lo, hi] = support(law);
  if (u == 0.0) return lo;
  if (u == 1.0) return hi;
  while (hi - lo > kQuantileTol) {
    const double mid = 0.5 * (lo + hi);
    if (law_cdf(law, mid) < u) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double law_moment(LimitLaw law, int k) {
  if (k < 0) throw DomainError("moment order must be >= 0");
  if (k == 0) return 1.0;
  if (law == LimitLaw::Squared) {
    return combinatorics::moment_formula(k).convert_to<double>();
  }
  return integrate_against(law, [k](double x) { return std::pow(x, k); }, kMomentTol);
}

std::complex<double> stieltjes_squared(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() >= 0.0 && z.real() <= 4.0) {
    throw DomainError(fmt::format("Stieltjes transform undefined on the support (z = {})", z.real()));
  }
  const std::complex<double> root = std::sqrt(0.25 - 1.0 / z);
  const std::complex<double> a = -0.5 + root;
  const std::complex<double> b = -0.5 - root;
  // The two roots of z s^2 + z s + 1 = 0. Off the real axis the transform of a
  // measure maps the upper half-plane to itself; on the real axis it is the
  // root of smaller modulus (the other tends to -1 at infinity).
  if (z.imag() != 0.0) {
    return (a.imag() * z.imag() > 0.0) ? a : b;
  }
  return std::abs(a) <= std::abs(b) ? a : b;
}

}  // namespace acv::laws
