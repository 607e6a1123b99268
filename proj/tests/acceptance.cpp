// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Usage: acv_acceptance [path-to-acv-cli] [scratch-dir]
// With a CLI path, the determinism criterion drives the real `simulate`
// subcommand; without one it exercises the same library calls directly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "acv/acv_core.hpp"
#include "acv/combinatorics.hpp"
#include "acv/eigensolve.hpp"
#include "acv/harness.hpp"
#include "acv/limit_laws.hpp"
#include "acv/simd/kernels.hpp"
#include "acv/spectral_stats.hpp"
#include "oracles.hpp"

using namespace acv;
using laws::LimitLaw;
namespace fs = std::filesystem;

namespace {

// Tolerances, fixed here rather than taken from the command line.
constexpr double kDensityTol = 1e-10;
constexpr double kMomentQuadTol = 1e-8;
constexpr double kStieltjesEqTol = 1e-12;
constexpr double kStieltjesQuadTol = 1e-6;
constexpr double kPushforwardTol = 1e-12;
constexpr double kEigenOracleTol = 1e-10;
constexpr double kInvariantRelTol = 1e-9;
constexpr double kKsLargestMean = 0.10;
constexpr double kKsPerRep = 0.15;
constexpr int kKsPerRepRequired = 7;
constexpr double kFirstMomentTol = 0.05;
constexpr double kLambdaMaxLo = 3.2;
constexpr double kLambdaMaxHi = 4.6;
constexpr double kUniversalityTol = 0.05;
constexpr double kRatioKsFloor = 0.15;
constexpr double kTruncationKs = 0.10;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string note) {
    if (!ok) pass = false;
    notes.push_back(fmt::format("{}{}", ok ? "" : "!", std::move(note)));
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.notes.push_back(fmt::format("!exception: {}", e.what()));
  }
  std::string joined;
  for (const auto& n : o.notes) joined += (joined.empty() ? "" : "; ") + n;
  fmt::print("criterion {:2d}: {} - {} [{}]\n", id, o.pass ? "PASS" : "FAIL", title, joined);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

harness::RunConfig gaussian_config(std::size_t p, std::size_t T, int reps, std::uint64_t seed) {
  harness::RunConfig cfg;
  cfg.p = p;
  cfg.T = T;
  cfg.lag = 1;
  cfg.distribution = ensemble::EntryDistribution::gaussian();
  cfg.base_seed = seed;
  cfg.replications = reps;
  return cfg;
}

std::vector<double> ks_values(const harness::RunRecord& r) {
  std::vector<double> v;
  for (const auto& rep : r.replications) v.push_back(rep.ks_squared);
  return v;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

bool no_errors(const harness::RunRecord& r) {
  return std::none_of(r.replications.begin(), r.replications.end(),
                      [](const auto& rep) { return rep.error.has_value(); });
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome analytic_laws() {
  Outcome o;
  double worst = 0.0;
  for (auto law : {LimitLaw::Quarter, LimitLaw::Squared}) {
    worst = std::max(worst, std::abs(laws::integrate_against(law, [](double) { return 1.0; }) - 1.0));
  }
  o.require(worst <= kDensityTol, fmt::format("density mass dev {:.2e}", worst));

  worst = 0.0;
  bool exact = true;
  for (int k = 1; k <= 8; ++k) {
    const double formula = combinatorics::moment_formula(k).convert_to<double>();
    exact = exact && laws::law_moment(LimitLaw::Squared, k) == formula;
    const double q = laws::integrate_against(LimitLaw::Squared, [k](double x) { return std::pow(x, k); });
    worst = std::max(worst, std::abs(q - formula) / formula);
  }
  o.require(exact, "moments k=1..8 equal (1/k)C(2k,k-1)");
  o.require(worst <= kMomentQuadTol, fmt::format("moment quadrature rel dev {:.2e}", worst));

  worst = 0.0;
  for (double z : {-2.0, -1.0, 6.0}) {
    const auto s = laws::stieltjes_squared(z);
    worst = std::max(worst, std::abs(z * s * s + z * s + 1.0));
  }
  o.require(worst <= kStieltjesEqTol, fmt::format("z s^2 + z s + 1 residual {:.2e}", worst));

  const double direct = oracle::tanh_sinh(
      [](double x) { return std::sqrt(1.0 / x - 0.25) / (std::numbers::pi * (x + 1.0)); }, 0.0, 4.0);
  const double sdev = std::abs(laws::stieltjes_squared(-1.0).real() - direct);
  o.require(sdev <= kStieltjesQuadTol, fmt::format("s(-1) vs quadrature {:.2e}", sdev));

  worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 2.0 * (i + 0.5) / 1000.0;
    const double h = laws::law_cdf(LimitLaw::Semicircle, x);
    const double g = laws::law_cdf(LimitLaw::Quarter, x);
    worst = std::max(worst, std::abs(laws::law_cdf(LimitLaw::Squared, x * x) - g));
    worst = std::max(worst, std::abs(g - (2.0 * h - 1.0)));
  }
  o.require(worst <= kPushforwardTol, fmt::format("pushforward cdf dev {:.2e}", worst));
  return o;
}

Outcome combinatorics_suite() {
  Outcome o;
  int mismatches = 0;
  for (int k = 1; k <= 12; ++k) {
    const auto c = combinatorics::catalan(k);
    if (combinatorics::count_dyck_paths(k) != c || combinatorics::moment_formula(k) != c) ++mismatches;
  }
  o.require(mismatches == 0, fmt::format("Dyck/moment/Catalan mismatches k<=12: {}", mismatches));
  mismatches = 0;
  for (int k = 1; k <= 20; ++k) {
    if (combinatorics::iso_class_count(k, k) != combinatorics::moment_formula(k)) ++mismatches;
  }
  o.require(mismatches == 0, fmt::format("f_(k-1)(k) vs moment mismatches k<=20: {}", mismatches));
  return o;
}

Outcome eigensolver_oracle() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const auto m = oracle::random_symmetric(n, 7000 + trial);
    const auto a = eigen::eigvals_sym(m);
    const auto b = eigen::jacobi_eigenvalues(m);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  o.require(worst <= kEigenOracleTol, fmt::format("QL vs Jacobi max dev {:.2e}", worst));

  double rel = 0.0;
  for (std::size_t n : {16u, 64u, 128u, 256u}) {
    const auto m = oracle::random_symmetric(n, 8000 + n);
    const auto ev = eigen::eigvals_sym(m);
    double s1 = 0.0, s2 = 0.0, fro = 0.0;
    for (double v : ev) {
      s1 += v;
      s2 += v * v;
    }
    for (double v : m.data()) fro += v * v;
    const double tr = oracle::trace(m);
    rel = std::max(rel, std::abs(s1 - tr) / std::max(1.0, std::abs(tr)));
    rel = std::max(rel, std::abs(s2 - fro) / fro);
  }
  o.require(rel <= kInvariantRelTol, fmt::format("trace/Frobenius rel dev {:.2e}", rel));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "acv_acceptance";
  fs::create_directories(scratch);
  const std::size_t workers = harness::default_workers();
  fmt::print("acceptance: {} worker(s), kernels {}\n", workers, simd::active().name);

  report(1, "analytic law suite", analytic_laws);
  report(2, "combinatorics suite", combinatorics_suite);
  report(3, "eigensolver oracle", eigensolver_oracle);

  // Criteria 4 and 5 share one sweep.
  harness::SweepConfig lsd;
  lsd.mode = harness::SweepConfig::Mode::Explicit;
  lsd.points = {{16, 640}, {32, 2560}, {64, 10240}};
  lsd.run = gaussian_config(0, 0, 8, 20240601);
  harness::SweepSummary lsd_summary;
  bool lsd_ok = true;
  try {
    lsd_summary = harness::run_sweep(lsd, workers);
  } catch (const std::exception& e) {
    lsd_ok = false;
    fmt::print("sweep for criteria 4-5 failed: {}\n", e.what());
  }

  report(4, "LSD convergence in the ultra-dimensional regime", [&] {
    Outcome o;
    o.require(lsd_ok && lsd_summary.points.size() == 3, "sweep completed");
    if (!o.pass) return o;
    const auto& pts = lsd_summary.points;
    for (const auto& r : lsd_summary.runs) o.require(no_errors(r), fmt::format("p={} no failed reps", r.config.p));
    const bool decreasing = pts[0].mean_ks_squared > pts[1].mean_ks_squared &&
                            pts[1].mean_ks_squared > pts[2].mean_ks_squared;
    o.require(decreasing, fmt::format("mean KS {:.4f} > {:.4f} > {:.4f}", pts[0].mean_ks_squared,
                                      pts[1].mean_ks_squared, pts[2].mean_ks_squared));
    o.require(pts[2].mean_ks_squared < kKsLargestMean,
              fmt::format("mean KS at (64,10240) {:.4f} < {}", pts[2].mean_ks_squared, kKsLargestMean));
    const auto ks = ks_values(lsd_summary.runs[2]);
    const auto below = std::count_if(ks.begin(), ks.end(), [](double v) { return v < kKsPerRep; });
    o.require(below >= kKsPerRepRequired,
              fmt::format("{}/8 reps with KS < {} (max {:.4f})", below, kKsPerRep,
                          *std::max_element(ks.begin(), ks.end())));
    return o;
  });

  report(5, "first-moment exactness", [&] {
    Outcome o;
    o.require(lsd_ok && lsd_summary.points.size() == 3, "sweep completed");
    if (!o.pass) return o;
    const double m1 = lsd_summary.points[2].mean_moments.at(0);
    o.require(std::abs(m1 - 1.0) <= kFirstMomentTol, fmt::format("mean m1 at (64,10240) = {:.5f}", m1));
    return o;
  });

  report(6, "largest eigenvalue near the edge 4", [&] {
    Outcome o;
    harness::SweepConfig s;
    s.mode = harness::SweepConfig::Mode::Ultra;
    s.alpha = 0.5;
    s.scale = 0.8;
    s.T_list = {400, 6400};
    s.run = gaussian_config(0, 0, 8, 20240602);
    const auto sum = harness::run_sweep(s, workers);
    const auto& small = sum.points.at(0);
    const auto& large = sum.points.at(1);
    o.require(small.p == 16 && large.p == 64, fmt::format("points p={},{}", small.p, large.p));
    o.require(large.median_lambda_max >= kLambdaMaxLo && large.median_lambda_max <= kLambdaMaxHi,
              fmt::format("median lambda_max at (64,6400) = {:.4f} in [{}, {}]", large.median_lambda_max,
                          kLambdaMaxLo, kLambdaMaxHi));
    o.require(large.median_edge_gap <= small.median_edge_gap,
              fmt::format("median |lambda_max-4|: p=64 {:.4f} <= p=16 {:.4f}", large.median_edge_gap,
                          small.median_edge_gap));
    return o;
  });

  report(7, "universality: Rademacher vs Gaussian", [&] {
    Outcome o;
    auto g = gaussian_config(64, 6400, 8, 20240603);
    auto r = g;
    r.distribution = ensemble::EntryDistribution::rademacher();
    const auto rg = harness::run_single(g, workers);
    const auto rr = harness::run_single(r, workers);
    o.require(no_errors(rg) && no_errors(rr), "no failed reps");
    const double kg = mean(ks_values(rg)), kr = mean(ks_values(rr));
    o.require(std::abs(kg - kr) < kUniversalityTol,
              fmt::format("mean KS gaussian {:.4f}, rademacher {:.4f}, diff {:.4f}", kg, kr, std::abs(kg - kr)));
    return o;
  });

  report(8, "regime contrast at p/T = 1", [&] {
    Outcome o;
    harness::SweepConfig s;
    s.mode = harness::SweepConfig::Mode::Ratio;
    s.c = 1.0;
    s.T_list = {256};
    s.run = gaussian_config(0, 0, 4, 20240604);
    const auto sum = harness::run_sweep(s, workers);
    o.require(sum.points.at(0).p == 256, "point (256,256)");
    o.require(no_errors(sum.runs.at(0)), "no failed reps");
    const auto ks = ks_values(sum.runs.at(0));
    const double lo = *std::min_element(ks.begin(), ks.end());
    o.require(lo > kRatioKsFloor, fmt::format("min KS over 4 reps {:.4f} > {}", lo, kRatioKsFloor));
    return o;
  });

  report(9, "truncation stability for Student-t(5)", [&] {
    Outcome o;
    const std::size_t p = 64, T = 4096;
    const auto raw = ensemble::make_sampler(ensemble::EntryDistribution::student_t(5.0));
    const auto cut = ensemble::make_sampler(ensemble::truncate_spec(
        ensemble::EntryDistribution::student_t(5.0), ensemble::light_truncation_threshold(T)));
    double worst = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
      const auto seed = harness::replication_seed(20240605, rep);
      const auto a = core::spectrum_pipeline(ensemble::sample_panel(raw, p, T, 1, seed));
      const auto b = core::spectrum_pipeline(ensemble::sample_panel(cut, p, T, 1, seed));
      worst = std::max(worst, stats::ks_two_sample(a.values, b.values));
    }
    o.require(worst < kTruncationKs,
              fmt::format("max two-sample KS raw vs truncated at {:.4f}: {:.4f}",
                          ensemble::light_truncation_threshold(T), worst));
    return o;
  });

  report(10, "determinism", [&] {
    Outcome o;
    const fs::path a = scratch / "sim_a.csv", b = scratch / "sim_b.csv";
    if (!cli.empty()) {
      for (const auto& path : {a, b}) {
        const auto cmd = fmt::format("\"{}\" simulate --p 32 --T 2560 --lag 1 --dist gaussian --seed 99 "
                                     "--reps 4 --out \"{}\" --format csv",
                                     cli, path.string());
        o.require(std::system(cmd.c_str()) == 0, "simulate exited 0");
      }
    } else {
      const auto cfg = gaussian_config(32, 2560, 4, 99);
      for (const auto& path : {a, b}) {
        harness::export_records({harness::run_single(cfg, workers)}, harness::ExportFormat::Csv, path.string());
      }
    }
    const auto ta = read_file(a), tb = read_file(b);
    o.require(!ta.empty() && ta == tb, fmt::format("simulate outputs identical ({} bytes)", ta.size()));

    harness::SweepConfig s;
    s.mode = harness::SweepConfig::Mode::Ultra;
    s.alpha = 0.5;
    s.T_list = {256, 1024, 4096};
    s.run = gaussian_config(0, 0, 4, 20240606);
    const auto one = harness::run_sweep(s, 1);
    const auto many = harness::run_sweep(s, std::max<std::size_t>(workers, 4));
    std::ostringstream j1, jn, c1, cn;
    harness::write_jsonl(j1, one.runs);
    harness::write_jsonl(jn, many.runs);
    harness::write_csv(c1, one.runs);
    harness::write_csv(cn, many.runs);
    o.require(j1.str() == jn.str() && c1.str() == cn.str() &&
                  harness::to_json(one).dump() == harness::to_json(many).dump(),
              "1-worker vs N-worker sweep outputs identical");
    return o;
  });

  fmt::print("acceptance: {} of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
