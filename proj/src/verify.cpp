// Self-verification: analytic and combinatorial identities plus solver
// cross-checks, each reported with its measured deviation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include <fmt/format.h>

#include "acv/acv_core.hpp"
#include "acv/eigensolve.hpp"
#include "acv/error.hpp"
#include "acv/harness.hpp"
#include "acv/limit_laws.hpp"
#include "acv/rng.hpp"
#include "acv/simd/kernels.hpp"

namespace acv::harness {
namespace {

using combinatorics::BigInt;
using laws::LimitLaw;

constexpr std::array kLaws{LimitLaw::Semicircle, LimitLaw::Quarter, LimitLaw::Squared};

Check tolerance_check(std::string name, double deviation, double tol, std::string detail = {}) {
  return Check{std::move(name), std::isfinite(deviation) && deviation <= tol, deviation, tol,
               std::move(detail)};
}

Check exact_check(std::string name, int mismatches, std::string detail = {}) {
  return Check{std::move(name), mismatches == 0, static_cast<double>(mismatches), 0.0,
               std::move(detail)};
}

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = 2.0 * rng::counter_uniform(seed, i, j) - 1.0;
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return HUGE_VAL;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Stieltjes transform by direct quadrature of f(x) / (x - z).
std::complex<double> stieltjes_by_quadrature(std::complex<double> z) {
  const double re = laws::integrate_against(
      LimitLaw::Squared, [z](double x) { return (1.0 / (x - z)).real(); }, 1e-13);
  const double im = laws::integrate_against(
      LimitLaw::Squared, [z](double x) { return (1.0 / (x - z)).imag(); }, 1e-13);
  return {re, im};
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

VerificationReport verify_suite(const VerifyOptions& options) {
  VerificationReport rep;
  auto& out = rep.checks;

  // -- limit laws --------------------------------------------------------
  for (auto law : kLaws) {
    const double mass = laws::integrate_against(law, [](double) { return 1.0; });
    out.push_back(tolerance_check(fmt::format("density_normalization_{}", laws::law_name(law)),
                                  std::abs(mass - 1.0), 1e-10));
  }

  {
    double dev = 0.0;
    for (int k = 1; k <= 8; ++k) {
      const double quad = laws::integrate_against(
          LimitLaw::Squared, [k](double x) { return std::pow(x, k); }, 1e-13);
      dev = std::max(dev, std::abs(quad - laws::law_moment(LimitLaw::Squared, k)) /
                              laws::law_moment(LimitLaw::Squared, k));
    }
    out.push_back(tolerance_check("squared_moments_vs_quadrature_k1_8", dev, 1e-8));
  }

  {
    double dev = 0.0;
    for (int k = 1; k <= 6; ++k) {
      dev = std::max(dev, std::abs(laws::law_moment(LimitLaw::Quarter, 2 * k) -
                                   laws::law_moment(LimitLaw::Squared, k)));
    }
    out.push_back(tolerance_check("quarter_even_moments_equal_squared", dev, 1e-8));
  }

  out.push_back(tolerance_check(
      "quarter_first_moment",
      std::abs(laws::law_moment(LimitLaw::Quarter, 1) - 8.0 / (3.0 * std::numbers::pi)), 1e-10));

  {
    double dev = 0.0;
    for (std::complex<double> z : {std::complex<double>(-2.0), std::complex<double>(-1.0),
                                   std::complex<double>(6.0), std::complex<double>(2.0, 1.0)}) {
      const auto s = laws::stieltjes_squared(z);
      dev = std::max(dev, std::abs(z * s * s + z * s + 1.0) / std::max(1.0, std::abs(z)));
    }
    out.push_back(tolerance_check("stieltjes_algebraic_identity", dev, 1e-12));
  }

  {
    double dev = 0.0;
    for (std::complex<double> z : {std::complex<double>(-1.0), std::complex<double>(-5.0),
                                   std::complex<double>(6.0), std::complex<double>(2.0, 1.0)}) {
      dev = std::max(dev, std::abs(laws::stieltjes_squared(z) - stieltjes_by_quadrature(z)));
    }
    out.push_back(tolerance_check("stieltjes_vs_quadrature", dev, 1e-6));
  }

  {
    const std::complex<double> z(1e6);
    out.push_back(tolerance_check("stieltjes_asymptotic",
                                  std::abs(-z * laws::stieltjes_squared(z) - 1.0), 1e-5));
  }

  {
    double dq = 0.0, ds = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = 2.0 * i / 1000.0;
      dq = std::max(dq, std::abs(laws::law_cdf(LimitLaw::Quarter, x) -
                                 (2.0 * laws::law_cdf(LimitLaw::Semicircle, x) - 1.0)));
      const double y = 4.0 * i / 1000.0;
      ds = std::max(ds, std::abs(laws::law_cdf(LimitLaw::Squared, y) -
                                 laws::law_cdf(LimitLaw::Quarter, std::sqrt(y))));
    }
    out.push_back(tolerance_check("cdf_pushforward_quarter_semicircle", dq, 1e-12));
    out.push_back(tolerance_check("cdf_pushforward_squared_quarter", ds, 1e-12));
  }

  for (auto law : kLaws) {
    const auto [lo, hi] = laws::support(law);
    double dev = 0.0;
    for (int i = 1; i < 20; ++i) {
      const double x = lo + (hi - lo) * i / 20.0;
      // Density integrated over [lo, x] in the smoothing variable.
      double direct = 0.0;
      if (law == LimitLaw::Squared) {
        const double th = std::asin(std::sqrt(x) / 2.0);
        direct = quad::integrate(
            [law](double t) {
              const double s = std::sin(t);
              return laws::law_pdf(law, 4.0 * s * s) * 8.0 * s * std::cos(t);
            },
            0.0, th, 1e-13);
      } else {
        const double th_lo = law == LimitLaw::Quarter ? 0.0 : -std::numbers::pi / 2.0;
        const double th = std::asin(x / 2.0);
        direct = quad::integrate(
            [law](double t) { return laws::law_pdf(law, 2.0 * std::sin(t)) * 2.0 * std::cos(t); },
            th_lo, th, 1e-13);
      }
      dev = std::max(dev, std::abs(direct - laws::law_cdf(law, x)));
    }
    out.push_back(tolerance_check(fmt::format("cdf_vs_density_quadrature_{}", laws::law_name(law)),
                                  dev, 1e-9));
  }

  {
    double dev = 0.0;
    for (auto law : kLaws) {
      const auto [lo, hi] = laws::support(law);
      for (int i = 1; i < 100; ++i) {
        const double x = lo + (hi - lo) * i / 100.0;
        dev = std::max(dev, std::abs(laws::law_quantile(law, laws::law_cdf(law, x)) - x));
      }
    }
    out.push_back(tolerance_check("quantile_round_trip", dev, 1e-8));
  }

  // -- combinatorics ----------------------------------------------------
  {
    int mismatches = 0;
    for (int k = 1; k <= 12; ++k) {
      if (combinatorics::moment_formula(k) != options.catalan(k)) ++mismatches;
    }
    out.push_back(exact_check("moment_formula_equals_catalan_k1_12", mismatches));
  }
  {
    int mismatches = 0;
    for (int k = 1; k <= 12; ++k) {
      if (combinatorics::count_dyck_paths(k) != options.catalan(k)) ++mismatches;
    }
    out.push_back(exact_check("dyck_enumeration_equals_catalan_k1_12", mismatches));
  }
  {
    int mismatches = 0;
    for (int k = 1; k <= 20; ++k) {
      if (combinatorics::iso_class_count(k, k) != combinatorics::moment_formula(k)) ++mismatches;
    }
    out.push_back(exact_check("iso_class_count_diagonal_equals_moment_k1_20", mismatches));
  }
  {
    int failures = 0;
    for (int k = 1; k <= 20; ++k) {
      for (int t = 1; t <= k; ++t) {
        try {
          if (combinatorics::iso_class_count(k, t) < 0) ++failures;
        } catch (const ConsistencyError&) {
          ++failures;
        }
      }
    }
    out.push_back(exact_check("iso_class_counts_integral_nonnegative", failures));
  }
  {
    int failures = 0;
    for (int k = 2; k <= 12; ++k) {
      for (int t = 2; t <= k; ++t) {
        const int peak = (2 * k - t) / 2 + 1;
        for (int s = 1; s < peak; ++s) {
          if (combinatorics::iso_class_bound(k, t, s + 1) < combinatorics::iso_class_bound(k, t, s)) {
            ++failures;
          }
        }
      }
    }
    out.push_back(exact_check("iso_class_bound_unimodal_in_sJ", failures));
  }

  // -- eigensolver -----------------------------------------------------
  {
    double dev = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 12);
      const auto m = random_symmetric(n, rng::mix64(options.seed, static_cast<std::uint64_t>(trial)));
      dev = std::max(dev, max_abs_diff(eigen::eigvals_sym(m), eigen::jacobi_eigenvalues(m)));
    }
    out.push_back(tolerance_check("eigensolver_ql_vs_jacobi_100_random", dev, 1e-10));
  }
  {
    double dev_trace = 0.0, dev_fro = 0.0;
    for (std::size_t n : {16u, 64u, 256u}) {
      const auto m = random_symmetric(n, rng::mix64(options.seed, 1000 + n));
      const auto ev = eigen::eigvals_sym(m);
      double tr = 0.0, fro = 0.0, s1 = 0.0, s2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
      for (double x : m.data()) fro += x * x;
      for (double v : ev) {
        s1 += v;
        s2 += v * v;
      }
      dev_trace = std::max(dev_trace, std::abs(s1 - tr) / std::max(1.0, std::abs(tr)));
      dev_fro = std::max(dev_fro, std::abs(s2 - fro) / fro);
    }
    out.push_back(tolerance_check("eigensolver_trace_invariant_n256", dev_trace, 1e-9));
    out.push_back(tolerance_check("eigensolver_frobenius_invariant_n256", dev_fro, 1e-9));
  }
  {
    const auto m = random_symmetric(20, rng::mix64(options.seed, 77));
    const auto base = eigen::eigvals_sym(m);
    double dev = 0.0;
    for (double c : {2.0, 1e-3}) {
      Matrix scaled = m;
      for (double& x : scaled.data()) x *= c;
      const auto ev = eigen::eigvals_sym(scaled);
      for (std::size_t i = 0; i < ev.size(); ++i) {
        dev = std::max(dev, std::abs(ev[i] - c * base[i]) / (c * std::max(1.0, std::abs(base[i]))));
      }
    }
    out.push_back(tolerance_check("eigensolver_scaling_equivariance", dev, 1e-10));
  }

  // -- kernels ---------------------------------------------------------
  {
    double dev = 0.0;
    std::vector<double> x(1003), y(1003);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = 2.0 * rng::counter_uniform(options.seed, 1, i) - 1.0;
      y[i] = 2.0 * rng::counter_uniform(options.seed, 2, i) - 1.0;
    }
    const auto& ref = simd::scalar_kernels();
    for (const auto* table : simd::available_kernels()) {
      for (std::size_t n : {0u, 1u, 3u, 4u, 15u, 16u, 17u, 1003u}) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::abs(x[i] * y[i]);
        const double d = std::abs(table->dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n));
        dev = std::max(dev, norm > 0.0 ? d / norm : d);
      }
    }
    out.push_back(tolerance_check("simd_dot_matches_scalar_reference", dev, 1e-13,
                                  std::string(simd::active().name)));
  }

  // -- ensemble and core -----------------------------------------------
  {
    using ensemble::EntryDistribution;
    double dev = 0.0;
    for (const auto& d : {EntryDistribution::gaussian(), EntryDistribution::rademacher(),
                          EntryDistribution::uniform(), EntryDistribution::student_t(5.0),
                          ensemble::truncate_spec(EntryDistribution::gaussian(), 3.0),
                          ensemble::truncate_spec(EntryDistribution::uniform(), 1.0),
                          ensemble::truncate_spec(EntryDistribution::student_t(5.0), 2.8284271247461903)}) {
      dev = std::max(dev, std::abs(ensemble::entry_moment(d, 2) - 1.0));
    }
    out.push_back(tolerance_check("entry_laws_unit_variance", dev, 1e-8));
  }
  {
    const auto t5 = ensemble::EntryDistribution::student_t(5.0);
    const double closed = ensemble::entry_moment(t5, 4);
    out.push_back(tolerance_check("student_t5_fourth_moment_is_9", std::abs(closed - 9.0), 1e-10));
  }
  {
    const auto sampler = ensemble::make_sampler(ensemble::EntryDistribution::gaussian());
    const auto panel = ensemble::sample_panel(sampler, 5, 7, 2, options.seed);
    const auto emb = core::build_embeddings(panel);
    const auto acv = core::build_acv(emb.lagged, emb.leading, panel.T, panel.lag);
    double dev = 0.0;
    for (std::size_t i = 0; i < panel.p; ++i) {
      for (std::size_t j = 0; j < panel.p; ++j) {
        double s = 0.0;
        for (std::size_t t = panel.lag; t < panel.lag + panel.T; ++t) {
          s += panel.entries(i, t) * panel.entries(j, t - panel.lag);
        }
        dev = std::max(dev, std::abs(s / static_cast<double>(panel.T) - acv.X(i, j)));
      }
    }
    out.push_back(tolerance_check("acv_product_equals_lagged_sum", dev, 1e-12));
  }
  return rep;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json j{{"name", c.name},
                     {"passed", c.passed},
                     {"deviation", c.deviation},
                     {"tolerance", c.tolerance}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  return {{"all_passed", report.all_passed()}, {"checks", std::move(checks)}};
}

}  // namespace acv::harness
