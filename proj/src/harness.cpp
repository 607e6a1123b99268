#include "acv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/core.h>

#include "acv/acv_core.hpp"
#include "acv/error.hpp"
#include "acv/rng.hpp"
#include "acv/spectral_stats.hpp"

namespace acv::harness {
namespace {

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::size_t checked_round(double x, const char* what) {
  const double r = std::round(x);
  if (!(r >= 1.0)) throw ConfigError(fmt::format("sweep produced {} = {} < 1", what, r));
  return static_cast<std::size_t>(r);
}

}  // namespace

std::vector<std::string> validate(const RunConfig& cfg) {
  if (cfg.p < 2) throw ConfigError(fmt::format("p must be >= 2 (got {})", cfg.p));
  if (cfg.T < 1) throw ConfigError("T must be >= 1");
  if (cfg.lag < 1) throw ConfigError("lag must be >= 1");
  if (cfg.replications < 1) throw ConfigError("replications must be >= 1");
  for (int k : cfg.moment_orders) {
    if (k < 1) throw ConfigError(fmt::format("moment order {} must be >= 1", k));
  }
  ensemble::validate(cfg.distribution);
  std::vector<std::string> warnings;
  const double ratio = static_cast<double>(cfg.p) / static_cast<double>(cfg.T);
  if (ratio > 0.2) {
    warnings.push_back(fmt::format(
        "p/T = {:.3g} > 0.2: far from the p/T -> 0 regime the limit laws describe", ratio));
  }
  return warnings;
}

std::uint64_t replication_seed(std::uint64_t base_seed, int rep) {
  return rng::mix64(base_seed, static_cast<std::uint64_t>(rep));
}

std::size_t default_workers() {
  if (const char* env = std::getenv("ACV_MAX_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

ReplicationRecord run_replication(const RunConfig& cfg, int rep) {
  ReplicationRecord r;
  r.rep = rep;
  r.seed = replication_seed(cfg.base_seed, rep);
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto sampler = ensemble::make_sampler(cfg.distribution);
    const auto panel = ensemble::sample_panel(sampler, cfg.p, cfg.T, cfg.lag, r.seed);
    const auto spec = core::spectrum_pipeline(panel, cfg.distribution.tag());
    const auto ext = stats::extremes(spec);
    r.lambda_max = ext.lambda_max;
    r.lambda_min_positive = ext.lambda_min_positive;
    r.ks_squared = stats::ks_distance(spec, laws::LimitLaw::Squared);
    r.ks_quarter = stats::ks_distance(singular_values(spec), laws::LimitLaw::Quarter);
    for (int k : cfg.moment_orders) r.moments.push_back(stats::empirical_moment(spec, k));
  } catch (const Error& e) {
    r.error = e.what();
  }
  if (cfg.record_timing) {
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  }
  return r;
}

RunRecord run_single(const RunConfig& cfg, std::size_t workers, int run_id) {
  RunRecord rec;
  rec.run_id = run_id;
  rec.config = cfg;
  rec.warnings = validate(cfg);
  rec.replications.resize(static_cast<std::size_t>(cfg.replications));
  parallel_for(rec.replications.size(), workers, [&](std::size_t i) {
    rec.replications[i] = run_replication(cfg, static_cast<int>(i));
  });
  return rec;
}

std::vector<std::pair<std::size_t, std::size_t>> sweep_points(const SweepConfig& sweep) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  switch (sweep.mode) {
    case SweepConfig::Mode::Ultra:
      if (!(sweep.alpha > 0.0 && sweep.alpha < 1.0)) {
        throw ConfigError(fmt::format("ultra sweep requires 0 < alpha < 1 (got {})", sweep.alpha));
      }
      if (!(sweep.scale > 0.0)) throw ConfigError("ultra sweep requires scale > 0");
      for (std::size_t T : sweep.T_list) {
        out.emplace_back(checked_round(sweep.scale * std::pow(static_cast<double>(T), sweep.alpha), "p"),
                         T);
      }
      break;
    case SweepConfig::Mode::Ratio:
      if (!(sweep.c > 0.0)) throw ConfigError(fmt::format("ratio sweep requires c > 0 (got {})", sweep.c));
      for (std::size_t T : sweep.T_list) {
        out.emplace_back(checked_round(sweep.c * static_cast<double>(T), "p"), T);
      }
      break;
    case SweepConfig::Mode::Explicit:
      out = sweep.points;
      break;
  }
  if (out.empty()) throw ConfigError("sweep has no points");
  return out;
}

RunConfig point_config(const SweepConfig& sweep, std::size_t p, std::size_t T) {
  RunConfig cfg = sweep.run;
  cfg.p = p;
  cfg.T = T;
  switch (sweep.truncation) {
    case TruncationRule::None:
      break;
    case TruncationRule::Light:
      cfg.distribution = ensemble::truncate_spec(
          cfg.distribution, ensemble::light_truncation_threshold(T, sweep.truncation_param));
      break;
    case TruncationRule::Heavy:
      cfg.distribution = ensemble::truncate_spec(
          cfg.distribution, ensemble::heavy_truncation_threshold(T, sweep.truncation_param));
      break;
  }
  return cfg;
}

PointSummary summarize(const RunRecord& run) {
  PointSummary s;
  s.p = run.config.p;
  s.T = run.config.T;
  std::vector<double> lmax, gap, ks2, ks4;
  std::vector<std::vector<double>> moments(run.config.moment_orders.size());
  for (const auto& r : run.replications) {
    if (r.error) {
      ++s.failures;
      continue;
    }
    lmax.push_back(r.lambda_max);
    gap.push_back(std::abs(r.lambda_max - 4.0));
    ks2.push_back(r.ks_squared);
    ks4.push_back(r.ks_quarter);
    for (std::size_t k = 0; k < moments.size() && k < r.moments.size(); ++k) {
      moments[k].push_back(r.moments[k]);
    }
  }
  s.median_lambda_max = median(lmax);
  s.median_edge_gap = median(gap);
  s.mean_ks_squared = mean(ks2);
  s.mean_ks_quarter = mean(ks4);
  for (const auto& m : moments) s.mean_moments.push_back(mean(m));
  return s;
}

SweepSummary run_sweep(const SweepConfig& sweep, std::size_t workers) {
  const auto pts = sweep_points(sweep);
  SweepSummary out;
  out.runs.resize(pts.size());
  // Configs are resolved up front so per-point configuration errors surface
  // before any work starts.
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto& run = out.runs[i];
    run.run_id = static_cast<int>(i);
    run.config = point_config(sweep, pts[i].first, pts[i].second);
    run.warnings = validate(run.config);
    run.replications.resize(static_cast<std::size_t>(run.config.replications));
    for (int r = 0; r < run.config.replications; ++r) tasks.emplace_back(i, static_cast<std::size_t>(r));
  }
  parallel_for(tasks.size(), workers, [&](std::size_t t) {
    const auto [point, rep] = tasks[t];
    auto& run = out.runs[point];
    run.replications[rep] = run_replication(run.config, static_cast<int>(rep));
  });

  for (const auto& run : out.runs) out.points.push_back(summarize(run));
  bool ks_all = out.points.size() > 1;
  bool gap_all = out.points.size() > 1;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    const bool ks_down = out.points[i].mean_ks_squared < out.points[i - 1].mean_ks_squared;
    if (ks_down) ++out.ks_decreasing_steps;
    ks_all = ks_all && ks_down;
    gap_all = gap_all && out.points[i].median_edge_gap < out.points[i - 1].median_edge_gap;
  }
  out.ks_decreasing = ks_all;
  out.edge_gap_decreasing = gap_all;
  return out;
}

ensemble::EntryDistribution resolve_distribution(const std::string& spec, std::size_t T) {
  const auto at = spec.find('@');
  if (at != std::string::npos) {
    const std::string rule = spec.substr(at + 1);
    if (rule == "light" || rule == "heavy") {
      const auto base = ensemble::parse_distribution(spec.substr(0, at));
      const double threshold = rule == "light" ? ensemble::light_truncation_threshold(T)
                                               : ensemble::heavy_truncation_threshold(T);
      return ensemble::truncate_spec(base, threshold);
    }
  }
  auto dist = ensemble::parse_distribution(spec);
  if (dist.truncate_at) {
    // Re-run the degeneracy check the parser does not do.
    const double threshold = *dist.truncate_at;
    dist.truncate_at.reset();
    dist = ensemble::truncate_spec(dist, threshold);
  }
  return dist;
}

}  // namespace acv::harness
