#include "acv/spectral_stats.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "acv/combinatorics.hpp"
#include "acv/error.hpp"

namespace acv::stats {
namespace {

std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

double ks_distance(std::span<const double> values, laws::LimitLaw law) {
  if (values.empty()) throw DomainError("ks_distance: empty sample");
  const auto v = sorted_copy(values);
  const double p = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = laws::law_cdf(law, v[i]);
    const double above = static_cast<double>(i + 1) / p - f;
    const double below = f - static_cast<double>(i) / p;
    d = std::max({d, std::abs(above), std::abs(below)});
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  const auto x = sorted_copy(a);
  const auto y = sorted_copy(b);
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() || j < y.size()) {
    double t;
    if (j == y.size() || (i < x.size() && x[i] <= y[j])) t = x[i];
    else t = y[j];
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double empirical_moment(std::span<const double> values, int k) {
  if (k < 1) throw DomainError("empirical_moment: k must be >= 1");
  if (values.empty()) throw DomainError("empirical_moment: empty sample");
  double sum = 0.0;
  for (double v : values) {
    double pw = v;
    for (int e = 1; e < k; ++e) pw *= v;
    sum += pw;
  }
  return sum / static_cast<double>(values.size());
}

MomentReport moment_report(const Spectrum& spec, std::span<const int> orders) {
  MomentReport r;
  for (int k : orders) {
    const double emp = empirical_moment(spec, k);
    const double theory = combinatorics::catalan(k).convert_to<double>();
    r.orders.push_back(k);
    r.empirical.push_back(emp);
    r.theoretical.push_back(theory);
    r.deviation.push_back(emp - theory);
  }
  return r;
}

Extremes extremes(std::span<const double> values) {
  if (values.empty()) throw DomainError("extremes: empty sample");
  Extremes e;
  e.lambda_max = *std::max_element(values.begin(), values.end());
  const double zero = 1e-10 * std::max(1.0, e.lambda_max);
  for (double v : values) {
    if (v > zero && (!e.lambda_min_positive || v < *e.lambda_min_positive)) {
      e.lambda_min_positive = v;
    }
  }
  return e;
}

HistogramTable histogram(std::span<const double> values, int bins, laws::LimitLaw law) {
  if (bins < 1) throw DomainError("histogram: bins must be >= 1");
  if (values.empty()) throw DomainError("histogram: empty sample");
  const double top = std::max(kHistogramFloor, *std::max_element(values.begin(), values.end()));
  const double width = top / bins;
  HistogramTable t;
  t.bins.resize(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    auto& bin = t.bins[static_cast<std::size_t>(b)];
    bin.lo = b * width;
    bin.hi = (b + 1 == bins) ? top : (b + 1) * width;
    bin.theory_density = laws::law_pdf(law, 0.5 * (bin.lo + bin.hi));
  }
  for (double v : values) {
    auto b = static_cast<long>(std::floor(v / width));
    b = std::clamp(b, 0L, static_cast<long>(bins) - 1);
    ++t.bins[static_cast<std::size_t>(b)].count;
  }
  const double n = static_cast<double>(values.size());
  for (auto& bin : t.bins) bin.empirical_density = static_cast<double>(bin.count) / (n * width);
  return t;
}

void write_csv(std::ostream& out, const HistogramTable& table) {
  out << "bin_lo,bin_hi,count,emp_density,theory_density\n";
  for (const auto& b : table.bins) {
    out << fmt::format("{},{},{},{},{}\n", b.lo, b.hi, b.count, b.empirical_density,
                       b.theory_density);
  }
}

}  // namespace acv::stats
