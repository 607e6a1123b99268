#pragma once

// Experiment orchestration: replicated runs, regime sweeps, export and the
// built-in verification suite.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "acv/combinatorics.hpp"
#include "acv/ensemble.hpp"

namespace acv::harness {

struct RunConfig {
  std::size_t p = 2;
  std::size_t T = 2;
  std::size_t lag = 1;
  ensemble::EntryDistribution distribution;
  std::uint64_t base_seed = 0;
  int replications = 1;
  std::vector<int> moment_orders{1, 2, 3, 4, 5, 6};
  // Wall-clock timing makes output non-reproducible, so it is opt-in.
  bool record_timing = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError on hard violations (p < 2, lag < 1, no replications,
/// bad distribution); returns soft warnings (p/T > 0.2).
std::vector<std::string> validate(const RunConfig& cfg);

/// Seed of replication r: mix64(base_seed, r).
std::uint64_t replication_seed(std::uint64_t base_seed, int rep);

struct ReplicationRecord {
  int rep = 0;
  std::uint64_t seed = 0;
  double lambda_max = 0.0;
  std::optional<double> lambda_min_positive;
  double ks_squared = 0.0;
  double ks_quarter = 0.0;
  std::vector<double> moments;  // aligned with RunConfig::moment_orders
  double wall_ms = 0.0;
  std::optional<std::string> error;

  friend bool operator==(const ReplicationRecord&, const ReplicationRecord&) = default;
};

struct RunRecord {
  int run_id = 0;
  RunConfig config;
  std::vector<ReplicationRecord> replications;  // sorted by rep
  std::vector<std::string> warnings;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// ACV_MAX_WORKERS if set and positive, else the hardware concurrency.
std::size_t default_workers();

/// Runs fn(0..n-1) on up to `workers` threads. Exceptions are rethrown after
/// all workers stop.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

/// One replication. Library errors (e.g. eigensolver non-convergence) are
/// stored in the record instead of propagating.
ReplicationRecord run_replication(const RunConfig& cfg, int rep);

RunRecord run_single(const RunConfig& cfg, std::size_t workers = default_workers(), int run_id = 0);

enum class TruncationRule { None, Light, Heavy };

struct SweepConfig {
  enum class Mode { Ultra, Ratio, Explicit };
  Mode mode = Mode::Ultra;
  std::vector<std::size_t> T_list;
  double alpha = 0.5;  // Ultra: p = round(scale * T^alpha)
  double scale = 1.0;
  double c = 1.0;      // Ratio: p = round(c * T)
  std::vector<std::pair<std::size_t, std::size_t>> points;  // Explicit (p, T)
  // Per-point truncation resolved against each T (overrides template threshold).
  TruncationRule truncation = TruncationRule::None;
  std::optional<double> truncation_param;  // eta (Light) or delta (Heavy)
  RunConfig run;  // template; p and T are replaced per point
};

/// Throws ConfigError: Ultra needs 0 < alpha < 1, Ratio needs c > 0.
std::vector<std::pair<std::size_t, std::size_t>> sweep_points(const SweepConfig& sweep);

/// Template config specialised to one (p, T) point.
RunConfig point_config(const SweepConfig& sweep, std::size_t p, std::size_t T);

struct PointSummary {
  std::size_t p = 0;
  std::size_t T = 0;
  double median_lambda_max = 0.0;
  double median_edge_gap = 0.0;  // median |lambda_max - 4|
  double mean_ks_squared = 0.0;
  double mean_ks_quarter = 0.0;
  std::vector<double> mean_moments;
  int failures = 0;
};

struct SweepSummary {
  std::vector<RunRecord> runs;  // one per point, in point order
  std::vector<PointSummary> points;
  int ks_decreasing_steps = 0;  // consecutive points with smaller mean KS
  bool ks_decreasing = false;   // every step decreasing
  bool edge_gap_decreasing = false;
};

PointSummary summarize(const RunRecord& run);

SweepSummary run_sweep(const SweepConfig& sweep, std::size_t workers = default_workers());

// ---- serialization --------------------------------------------------------

enum class ExportFormat { Csv, Jsonl };

inline constexpr const char* kCsvHeader =
    "run_id,p,T,lag,dist,seed,rep,lambda_max,lambda_min_pos,ks_squared,ks_quarter,"
    "m1,m2,m3,m4,m5,m6,wall_ms";

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_jsonl(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_jsonl(std::istream& in);

/// Writes to `path`; IoError naming the path on failure.
void export_records(const std::vector<RunRecord>& records, ExportFormat format,
                    const std::string& path);

nlohmann::json to_json(const ensemble::EntryDistribution& d);
ensemble::EntryDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepSummary& s);

/// Parses the sweep configuration document (schema in README).
SweepConfig sweep_from_json(const nlohmann::json& j);

/// Compact distribution spec resolved against T: family[:nu][@threshold],
/// where threshold may be a number, "light" (T^{1/8}) or "heavy" (T^{1/4}).
ensemble::EntryDistribution resolve_distribution(const std::string& spec, std::size_t T);

// ---- verification ---------------------------------------------------------

struct Check {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool all_passed() const;
};

struct VerifyOptions {
  // Injection point for mutation testing of the Catalan checks.
  std::function<combinatorics::BigInt(int)> catalan = combinatorics::catalan;
  std::uint64_t seed = 20240531;
};

VerificationReport verify_suite(const VerifyOptions& options = {});

nlohmann::json to_json(const VerificationReport& report);

}  // namespace acv::harness
