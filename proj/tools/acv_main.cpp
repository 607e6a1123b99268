// Command-line front end: limit-law evaluators, exact combinatorics,
// simulation runs, regime sweeps and the self-verification suite.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "acv/acv_core.hpp"
#include "acv/combinatorics.hpp"
#include "acv/error.hpp"
#include "acv/harness.hpp"
#include "acv/limit_laws.hpp"
#include "acv/spectral_stats.hpp"

namespace {

using namespace acv;

laws::LimitLaw law_or_throw(const std::string& name) {
  if (auto law = laws::parse_law(name)) return *law;
  throw ConfigError(fmt::format("unknown law '{}'", name));
}

// Histogram of replication 0 of a run; recomputed since records keep only
// summary statistics.
void write_histogram(const harness::RunConfig& cfg, int bins, const std::string& path) {
  const auto sampler = ensemble::make_sampler(cfg.distribution);
  const auto panel = ensemble::sample_panel(sampler, cfg.p, cfg.T, cfg.lag,
                                            harness::replication_seed(cfg.base_seed, 0));
  const auto spec = core::spectrum_pipeline(panel, cfg.distribution.tag());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  stats::write_csv(out, stats::histogram(spec.values, bins, laws::LimitLaw::Squared));
  if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) fmt::print(stderr, "warning: {}\n", w);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lag-s sample autocovariance spectra in the p/T -> 0 regime"};
  app.require_subcommand(1);

  // law ------------------------------------------------------------------
  auto* law_cmd = app.add_subcommand("law", "Evaluate the semicircle, quarter and squared laws");
  law_cmd->require_subcommand(1);
  std::string law_name = "squared";
  double law_x = 0.0, law_u = 0.0, z_re = 0.0, z_im = 0.0;
  int law_k = 1;
  auto add_law = [&](CLI::App* c) {
    c->add_option("--law", law_name, "semicircle|quarter|squared")
        ->check(CLI::IsMember({"semicircle", "quarter", "squared"}));
  };
  auto* law_pdf = law_cmd->add_subcommand("pdf", "Density at --x");
  add_law(law_pdf);
  law_pdf->add_option("--x", law_x)->required();
  auto* law_cdf = law_cmd->add_subcommand("cdf", "Distribution function at --x");
  add_law(law_cdf);
  law_cdf->add_option("--x", law_x)->required();
  auto* law_q = law_cmd->add_subcommand("quantile", "Quantile at level --u");
  add_law(law_q);
  law_q->add_option("--u", law_u)->required();
  auto* law_m = law_cmd->add_subcommand("moment", "k-th moment");
  add_law(law_m);
  law_m->add_option("--k", law_k)->required();
  auto* law_s = law_cmd->add_subcommand("stieltjes", "Stieltjes transform of the squared law");
  law_s->add_option("--re", z_re)->required();
  law_s->add_option("--im", z_im);

  // combinatorics --------------------------------------------------------
  auto* comb = app.add_subcommand("combinatorics", "Exact moment-method counts");
  comb->require_subcommand(1);
  int ck = 1, ct = 1, cs = 1;
  auto add_k = [&](CLI::App* c) { c->add_option("--k", ck)->required(); };
  auto* c_cat = comb->add_subcommand("catalan", "Catalan number C_k");
  add_k(c_cat);
  auto* c_dyck = comb->add_subcommand("dyck", "Dyck paths of length 2k by enumeration (k <= 14)");
  add_k(c_dyck);
  auto* c_iso = comb->add_subcommand("isoclass", "(1/k) C(2k, t-1) C(k, t)");
  add_k(c_iso);
  c_iso->add_option("--t", ct)->required();
  auto* c_bound = comb->add_subcommand("isobound", "Class bound for (t, s); t = 1 uses C(2k, 2k-s)");
  add_k(c_bound);
  c_bound->add_option("--t", ct)->required();
  c_bound->add_option("--s", cs)->required();

  // simulate -------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Replicated spectra at one (p, T)");
  std::size_t sp = 64, sT = 6400, slag = 1;
  std::string sdist = "gaussian", sout, sformat = "csv", shist;
  std::uint64_t sseed = 0;
  int sreps = 1, sbins = stats::kDefaultBins;
  bool stiming = false;
  sim->add_option("--p", sp)->required();
  sim->add_option("--T", sT)->required();
  sim->add_option("--lag", slag)->default_val(1);
  sim->add_option("--dist", sdist, "family[:nu][@threshold|@light|@heavy]")->default_val("gaussian");
  sim->add_option("--seed", sseed)->default_val(0);
  sim->add_option("--reps", sreps)->default_val(1);
  sim->add_option("--out", sout)->required();
  sim->add_option("--format", sformat)->check(CLI::IsMember({"csv", "jsonl"}))->default_val("csv");
  sim->add_option("--hist", shist, "Also write a histogram CSV of replication 0");
  sim->add_option("--bins", sbins)->default_val(stats::kDefaultBins);
  sim->add_flag("--timing", stiming, "Record wall time (output no longer reproducible)");

  // sweep ----------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "Regime sweep from a JSON config");
  std::string wconfig, wout;
  int wbins = stats::kDefaultBins;
  sweep->add_option("--config", wconfig)->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", wout)->required();
  sweep->add_option("--bins", wbins)->default_val(stats::kDefaultBins);

  // verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run the analytic and numerical self-checks");
  bool vjson = false;
  verify->add_flag("--json", vjson);

  CLI11_PARSE(app, argc, argv);

  try {
    if (law_cmd->parsed()) {
      if (law_s->parsed()) {
        const auto s = laws::stieltjes_squared({z_re, z_im});
        fmt::print("{} {}\n", s.real(), s.imag());
        return 0;
      }
      const auto law = law_or_throw(law_name);
      double v = 0.0;
      if (law_pdf->parsed()) v = laws::law_pdf(law, law_x);
      else if (law_cdf->parsed()) v = laws::law_cdf(law, law_x);
      else if (law_q->parsed()) v = laws::law_quantile(law, law_u);
      else v = laws::law_moment(law, law_k);
      fmt::print("{}\n", v);
      return 0;
    }

    if (comb->parsed()) {
      combinatorics::BigInt v;
      if (c_cat->parsed()) v = combinatorics::catalan(ck);
      else if (c_dyck->parsed()) v = combinatorics::count_dyck_paths(ck);
      else if (c_iso->parsed()) v = combinatorics::iso_class_count(ck, ct);
      else v = ct == 1 ? combinatorics::iso_class_bound_t1(ck, cs)
                       : combinatorics::iso_class_bound(ck, ct, cs);
      std::cout << v << '\n';
      return 0;
    }

    if (sim->parsed()) {
      harness::RunConfig cfg;
      cfg.p = sp;
      cfg.T = sT;
      cfg.lag = slag;
      cfg.distribution = harness::resolve_distribution(sdist, sT);
      cfg.base_seed = sseed;
      cfg.replications = sreps;
      cfg.record_timing = stiming;
      const auto record = harness::run_single(cfg);
      print_warnings(record.warnings);
      harness::export_records({record}, sformat == "csv" ? harness::ExportFormat::Csv
                                                         : harness::ExportFormat::Jsonl,
                              sout);
      if (!shist.empty()) write_histogram(cfg, sbins, shist);
      int failed = 0;
      for (const auto& r : record.replications) {
        if (r.error) {
          ++failed;
          fmt::print(stderr, "replication {} failed: {}\n", r.rep, *r.error);
        }
      }
      return failed == 0 ? 0 : 1;
    }

    if (sweep->parsed()) {
      std::ifstream in(wconfig);
      if (!in) throw IoError(fmt::format("cannot read '{}'", wconfig));
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(fmt::format("{}: {}", wconfig, e.what()));
      }
      const auto config = harness::sweep_from_json(doc);
      const auto summary = harness::run_sweep(config);
      std::filesystem::create_directories(wout);
      const std::filesystem::path dir(wout);
      harness::export_records(summary.runs, harness::ExportFormat::Csv, (dir / "records.csv").string());
      harness::export_records(summary.runs, harness::ExportFormat::Jsonl,
                              (dir / "records.jsonl").string());
      {
        std::ofstream out(dir / "summary.json", std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(fmt::format("cannot write '{}'", (dir / "summary.json").string()));
        out << harness::to_json(summary).dump(2) << '\n';
      }
      for (const auto& run : summary.runs) {
        print_warnings(run.warnings);
        write_histogram(run.config, wbins,
                        (dir / fmt::format("hist_{:03d}.csv", run.run_id)).string());
      }
      for (const auto& pt : summary.points) {
        fmt::print("p={} T={} median_lambda_max={:.4f} mean_ks_squared={:.4f} failures={}\n", pt.p,
                   pt.T, pt.median_lambda_max, pt.mean_ks_squared, pt.failures);
      }
      return 0;
    }

    if (verify->parsed()) {
      const auto report = harness::verify_suite();
      if (vjson) {
        fmt::print("{}\n", harness::to_json(report).dump(2));
      } else {
        for (const auto& c : report.checks) {
          fmt::print("{:4} {:<48} deviation={:.3e} tol={:.1e}\n", c.passed ? "PASS" : "FAIL", c.name,
                     c.deviation, c.tolerance);
        }
        fmt::print("{} / {} checks passed\n",
                   std::count_if(report.checks.begin(), report.checks.end(),
                                 [](const auto& c) { return c.passed; }),
                   report.checks.size());
      }
      return report.all_passed() ? 0 : 1;
    }
  } catch (const acv::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
