// Command-line front end: simulate scenarios, run Monte Carlo campaigns,
// compare and summarize metric files. Fully reproducible from a config file
// plus a master seed.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dimtrack/campaign.hpp"
#include "dimtrack/config.hpp"
#include "dimtrack/csvio.hpp"
#include "dimtrack/metrics.hpp"
#include "dimtrack/rng.hpp"
#include "dimtrack/scenario.hpp"

namespace fs = std::filesystem;
using namespace dimtrack;

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::string> out;
  int jobs = 1;
};

CampaignConfig load_with_overrides(const CommonOpts& opts) {
  CampaignConfig cfg = load_campaign_config(opts.config_path);
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.runs) cfg.n_runs = *opts.runs;
  if (opts.out) {
    cfg.output_dir = *opts.out;
  } else if (const char* env = std::getenv("DIMTRACK_OUT")) {
    cfg.output_dir = env;
  }
  cfg.validate();
  return cfg;
}

std::string snr_tag(double snr_db) { return format_value(snr_db) + "dB"; }

std::string metrics_filename(const CampaignConfig& cfg, const MethodConfig& mc,
                             double snr_db) {
  return cfg.scenario.name + "_" + method_name(mc.method) + "_" + snr_tag(snr_db) +
         "_metrics.csv";
}

int cmd_simulate(const CommonOpts& opts) {
  CampaignConfig cfg = load_with_overrides(opts);
  for (double snr : cfg.scenario.variants()) {
    const ScenarioConfig scenario = cfg.scenario.with_snr(snr);
    for (int i = 0; i < cfg.n_runs; ++i) {
      const std::uint64_t run_seed = derive_seed(cfg.master_seed, i);
      Rng rng(derive_seed(run_seed, 1));
      const std::vector<TruthPoint> truth = generate_trajectory(scenario, rng);
      const std::vector<Frame> frames = render_frames(scenario, truth, rng);

      char run_tag[16];
      std::snprintf(run_tag, sizeof(run_tag), "run%03d", i);
      const fs::path dir =
          fs::path(cfg.output_dir) / scenario.name / snr_tag(snr) / run_tag;
      fs::create_directories(dir);
      write_truth_csv((dir / "truth.csv").string(), truth);
      write_frames_csv((dir / "frames.csv").string(), frames);
    }
    std::cout << "simulate: " << scenario.name << " @ " << snr_tag(snr) << ", "
              << cfg.n_runs << " run(s) written under " << cfg.output_dir << "\n";
  }
  return 0;
}

int cmd_run(const CommonOpts& opts, bool dump_streams) {
  CampaignConfig cfg = load_with_overrides(opts);
  fs::create_directories(cfg.output_dir);
  for (const MethodConfig& mc : cfg.methods) {
    for (double snr : cfg.scenario.variants()) {
      const ScenarioConfig scenario = cfg.scenario.with_snr(snr);
      const std::vector<RunRecord> records =
          run_monte_carlo(scenario, mc, cfg.n_runs, cfg.master_seed, opts.jobs);
      const MetricSeries series =
          compute_metrics(records, scenario.resolved_sensor());
      const fs::path path =
          fs::path(cfg.output_dir) / metrics_filename(cfg, mc, snr);
      write_metrics_csv(path.string(), scenario.name, method_name(mc.method), snr,
                        series);

      const double presence_pd =
          mean_pd(series, scenario.birth_frame, scenario.death_frame);
      const double pos =
          mean_defined(series.rmse_pos, scenario.birth_frame, scenario.death_frame);
      const double vel =
          mean_defined(series.rmse_vel, scenario.birth_frame, scenario.death_frame);
      std::cout << "run: " << method_name(mc.method) << " @ " << snr_tag(snr)
                << " mean_pd=" << format_value(presence_pd)
                << " rmse_pos=" << format_value(pos)
                << " rmse_vel=" << format_value(vel) << " -> " << path.string()
                << "\n";

      if (dump_streams) {
        RunStreams streams;
        run_one(scenario, mc, derive_seed(cfg.master_seed, 0), &streams);
        const std::string stem =
            (fs::path(cfg.output_dir) /
             (cfg.scenario.name + "_" + method_name(mc.method) + "_" +
              snr_tag(snr)))
                .string();
        if (mc.method == Method::Cdt || mc.method == Method::Sdt) {
          write_detections_csv(stem + "_detections.csv", streams.detections);
          write_estimates_csv(stem + "_estimates.csv", streams.estimates);
        } else {
          write_tbd_csv(stem + "_tbd.csv", streams.tbd);
        }
      }
    }
  }
  return 0;
}

std::pair<int, int> parse_window(const std::string& text) {
  const size_t dash = text.find('-');
  if (dash == std::string::npos) {
    throw std::invalid_argument("window must be LO-HI, e.g. 10-35");
  }
  return {std::stoi(text.substr(0, dash)), std::stoi(text.substr(dash + 1))};
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::string& window, const std::string& out_path) {
  const auto [lo, hi] = parse_window(window);
  const MetricsFile a = read_metrics_csv(path_a);
  const MetricsFile b = read_metrics_csv(path_b);
  if (a.series.n_frames() != b.series.n_frames()) {
    throw std::runtime_error("compare: metric files have different frame counts");
  }
  const ComparisonReport rep = compare(a.series, b.series, lo, hi);
  write_comparison_csv(out_path, rep);

  auto row = [&](const char* metric, double va, double vb, bool dom) {
    std::printf("%-10s %12s %12s %12s %s\n", metric, format_value(va).c_str(),
                format_value(vb).c_str(), format_value(va - vb).c_str(),
                dom ? "a" : "-");
  };
  std::printf("window %d-%d   a=%s(%s)  b=%s(%s)\n", lo, hi, a.method.c_str(),
              snr_tag(a.snr_db).c_str(), b.method.c_str(), snr_tag(b.snr_db).c_str());
  std::printf("%-10s %12s %12s %12s %s\n", "metric", "mean_a", "mean_b", "delta",
              "dominates");
  row("pd", rep.mean_pd_a, rep.mean_pd_b, rep.dominates_pd);
  row("rmse_pos", rep.mean_rmse_pos_a, rep.mean_rmse_pos_b, rep.dominates_rmse_pos);
  row("rmse_vel", rep.mean_rmse_vel_a, rep.mean_rmse_vel_b, rep.dominates_rmse_vel);
  std::cout << "comparison written to " << out_path << "\n";
  return 0;
}

int cmd_report(const std::vector<std::string>& paths, const std::string& window) {
  std::printf("%-10s %-8s %8s %10s %10s %10s\n", "scenario", "method", "snr_db",
              "mean_pd", "rmse_pos", "rmse_vel");
  for (const std::string& path : paths) {
    const MetricsFile f = read_metrics_csv(path);
    int lo = 1, hi = f.series.n_frames();
    if (!window.empty()) std::tie(lo, hi) = parse_window(window);
    std::printf("%-10s %-8s %8s %10s %10s %10s\n", f.scenario.c_str(),
                f.method.c_str(), format_value(f.snr_db).c_str(),
                format_value(mean_pd(f.series, lo, hi)).c_str(),
                format_value(mean_defined(f.series.rmse_pos, lo, hi)).c_str(),
                format_value(mean_defined(f.series.rmse_vel, lo, hi)).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential detection and tracking of low-SNR point objects"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool dump_streams = false;
  std::string path_a, path_b, window = "1-40", compare_out = "comparison.csv";
  std::vector<std::string> report_paths;
  std::string report_window;

  auto add_common = [&](CLI::App* sub, bool with_jobs) {
    sub->add_option("--config", opts.config_path, "campaign config (JSON)")
        ->required();
    sub->add_option("--seed", opts.seed, "master seed override");
    sub->add_option("--runs", opts.runs, "Monte Carlo run count override");
    sub->add_option("--out", opts.out, "output directory override");
    if (with_jobs) {
      sub->add_option("--jobs", opts.jobs, "worker threads for Monte Carlo runs");
    }
  };

  CLI::App* simulate = app.add_subcommand("simulate", "write truth and frame dumps");
  add_common(simulate, false);

  CLI::App* run = app.add_subcommand("run", "run a campaign, write metric CSVs");
  add_common(run, true);
  run->add_flag("--dump-streams", dump_streams,
                "also dump detection/estimate/existence streams of run 0");

  CLI::App* cmp = app.add_subcommand("compare", "compare two metric CSVs");
  cmp->add_option("--a", path_a, "first metrics CSV")->required();
  cmp->add_option("--b", path_b, "second metrics CSV")->required();
  cmp->add_option("--window", window, "frame window LO-HI");
  cmp->add_option("--out", compare_out, "comparison CSV path");

  CLI::App* rep = app.add_subcommand("report", "summarize metric CSVs");
  rep->add_option("--metrics", report_paths, "metrics CSV paths")
      ->required()
      ->expected(-1);
  rep->add_option("--window", report_window, "frame window LO-HI");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opts);
    if (run->parsed()) return cmd_run(opts, dump_streams);
    if (cmp->parsed()) return cmd_compare(path_a, path_b, window, compare_out);
    if (rep->parsed()) return cmd_report(report_paths, report_window);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
