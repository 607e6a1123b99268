#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "acv/error.hpp"
#include "acv/harness.hpp"

namespace acv::harness {

using nlohmann::json;

namespace {

std::string num(double v) { return fmt::format("{}", v); }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(fmt::format("missing field '{}'", key));
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("field '{}': {}", key, e.what()));
  }
}

template <class T>
T optional_field(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("field '{}': {}", key, e.what()));
  }
}

json config_to_json(const RunConfig& c) {
  return json{{"p", c.p},
              {"T", c.T},
              {"lag", c.lag},
              {"distribution", to_json(c.distribution)},
              {"dist", c.distribution.tag()},
              {"base_seed", c.base_seed},
              {"replications", c.replications},
              {"moment_orders", c.moment_orders},
              {"record_timing", c.record_timing}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.p = required<std::size_t>(j, "p");
  c.T = required<std::size_t>(j, "T");
  c.lag = required<std::size_t>(j, "lag");
  c.distribution = distribution_from_json(j.at("distribution"));
  c.base_seed = required<std::uint64_t>(j, "base_seed");
  c.replications = required<int>(j, "replications");
  c.moment_orders = required<std::vector<int>>(j, "moment_orders");
  c.record_timing = optional_field<bool>(j, "record_timing", false);
  return c;
}

}  // namespace

json to_json(const ensemble::EntryDistribution& d) {
  json j{{"family", std::string(ensemble::family_name(d.family))}};
  if (d.family == ensemble::Family::StudentT) j["nu"] = d.nu;
  if (d.truncate_at) j["truncate_at"] = *d.truncate_at;
  return j;
}

ensemble::EntryDistribution distribution_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("distribution must be an object");
  std::string spec = required<std::string>(j, "family");
  if (j.contains("nu")) spec += fmt::format(":{}", required<double>(j, "nu"));
  auto dist = ensemble::parse_distribution(spec);
  if (j.contains("truncate_at")) {
    if (!j.at("truncate_at").is_number()) {
      throw ConfigError("truncate_at must be a number here ('light'/'heavy' only in sweep configs)");
    }
    dist = ensemble::truncate_spec(dist, j.at("truncate_at").get<double>());
  }
  return dist;
}

json to_json(const RunRecord& r) {
  json reps = json::array();
  for (const auto& x : r.replications) {
    json e{{"rep", x.rep},
           {"seed", x.seed},
           {"lambda_max", x.lambda_max},
           {"lambda_min_positive", optional_number(x.lambda_min_positive)},
           {"ks_squared", x.ks_squared},
           {"ks_quarter", x.ks_quarter},
           {"moments", x.moments},
           {"wall_ms", x.wall_ms}};
    if (x.error) e["error"] = *x.error;
    reps.push_back(std::move(e));
  }
  return json{{"run_id", r.run_id},
              {"config", config_to_json(r.config)},
              {"replications", std::move(reps)},
              {"warnings", r.warnings}};
}

RunRecord run_record_from_json(const json& j) {
  RunRecord r;
  r.run_id = required<int>(j, "run_id");
  r.config = config_from_json(j.at("config"));
  r.warnings = optional_field<std::vector<std::string>>(j, "warnings", {});
  for (const auto& e : j.at("replications")) {
    ReplicationRecord x;
    x.rep = required<int>(e, "rep");
    x.seed = required<std::uint64_t>(e, "seed");
    x.lambda_max = required<double>(e, "lambda_max");
    if (!e.at("lambda_min_positive").is_null()) {
      x.lambda_min_positive = e.at("lambda_min_positive").get<double>();
    }
    x.ks_squared = required<double>(e, "ks_squared");
    x.ks_quarter = required<double>(e, "ks_quarter");
    x.moments = required<std::vector<double>>(e, "moments");
    x.wall_ms = required<double>(e, "wall_ms");
    if (e.contains("error")) x.error = e.at("error").get<std::string>();
    r.replications.push_back(std::move(x));
  }
  return r;
}

json to_json(const SweepSummary& s) {
  json points = json::array();
  for (const auto& pt : s.points) {
    points.push_back(json{{"p", pt.p},
                          {"T", pt.T},
                          {"p_over_T", static_cast<double>(pt.p) / static_cast<double>(pt.T)},
                          {"median_lambda_max", pt.median_lambda_max},
                          {"median_edge_gap", pt.median_edge_gap},
                          {"mean_ks_squared", pt.mean_ks_squared},
                          {"mean_ks_quarter", pt.mean_ks_quarter},
                          {"mean_moments", pt.mean_moments},
                          {"failures", pt.failures}});
  }
  return json{{"points", std::move(points)},
              {"ks_decreasing_steps", s.ks_decreasing_steps},
              {"ks_decreasing", s.ks_decreasing},
              {"edge_gap_decreasing", s.edge_gap_decreasing}};
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& rec : records) {
    const auto& c = rec.config;
    for (const auto& r : rec.replications) {
      out << fmt::format("{},{},{},{},{},{},{},", rec.run_id, c.p, c.T, c.lag, c.distribution.tag(),
                         r.seed, r.rep);
      if (r.error) {
        out << ",,,,,,,,,,";
      } else {
        out << num(r.lambda_max) << ','
            << (r.lambda_min_positive ? num(*r.lambda_min_positive) : std::string()) << ','
            << num(r.ks_squared) << ',' << num(r.ks_quarter) << ',';
        for (int k = 1; k <= 6; ++k) {
          const auto it = std::find(c.moment_orders.begin(), c.moment_orders.end(), k);
          if (it != c.moment_orders.end()) {
            const auto idx = static_cast<std::size_t>(it - c.moment_orders.begin());
            if (idx < r.moments.size()) out << num(r.moments[idx]);
          }
          out << ',';
        }
      }
      out << num(r.wall_ms) << '\n';
    }
  }
}

void write_jsonl(std::ostream& out, const std::vector<RunRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<RunRecord> read_jsonl(std::istream& in) {
  std::vector<RunRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(run_record_from_json(json::parse(line)));
  }
  return out;
}

void export_records(const std::vector<RunRecord>& records, ExportFormat format,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  if (format == ExportFormat::Csv) write_csv(out, records);
  else write_jsonl(out, records);
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

SweepConfig sweep_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  SweepConfig s;
  const auto mode = optional_field<std::string>(j, "mode", "ultra");
  if (mode == "ultra") s.mode = SweepConfig::Mode::Ultra;
  else if (mode == "ratio") s.mode = SweepConfig::Mode::Ratio;
  else if (mode == "explicit") s.mode = SweepConfig::Mode::Explicit;
  else throw ConfigError(fmt::format("unknown sweep mode '{}'", mode));

  s.T_list = optional_field<std::vector<std::size_t>>(j, "T_list", {});
  s.alpha = optional_field<double>(j, "alpha", 0.5);
  s.scale = optional_field<double>(j, "scale", 1.0);
  s.c = optional_field<double>(j, "c", 1.0);
  if (j.contains("points")) {
    for (const auto& pt : j.at("points")) {
      if (!pt.is_array() || pt.size() != 2) throw ConfigError("points entries must be [p, T]");
      s.points.emplace_back(pt[0].get<std::size_t>(), pt[1].get<std::size_t>());
    }
  }

  RunConfig& run = s.run;
  run.lag = optional_field<std::size_t>(j, "lag", 1);
  run.base_seed = optional_field<std::uint64_t>(j, "base_seed", 0);
  run.replications = optional_field<int>(j, "replications", 1);
  run.moment_orders = optional_field<std::vector<int>>(j, "moment_orders", {1, 2, 3, 4, 5, 6});
  run.record_timing = optional_field<bool>(j, "record_timing", false);

  json dist = j.value("distribution", json{{"family", "gaussian"}});
  if (dist.contains("truncate_at") && dist.at("truncate_at").is_string()) {
    const auto rule = dist.at("truncate_at").get<std::string>();
    if (rule == "light") {
      s.truncation = TruncationRule::Light;
      if (dist.contains("eta")) s.truncation_param = dist.at("eta").get<double>();
    } else if (rule == "heavy") {
      s.truncation = TruncationRule::Heavy;
      if (dist.contains("delta")) s.truncation_param = dist.at("delta").get<double>();
    } else {
      throw ConfigError(fmt::format("unknown truncation rule '{}'", rule));
    }
    dist.erase("truncate_at");
  }
  dist.erase("eta");
  dist.erase("delta");
  run.distribution = distribution_from_json(dist);
  return s;
}

}  // namespace acv::harness
