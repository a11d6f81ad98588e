#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dimtrack/cdt.hpp"
#include "dimtrack/metrics.hpp"
#include "dimtrack/scenario.hpp"
#include "dimtrack/sdt.hpp"
#include "dimtrack/tbd.hpp"
#include "dimtrack/tracker.hpp"

namespace dimtrack {

enum class Method { Cdt, Sdt, Tbd1, Tbd2, MmTbd1, MmTbd2 };

Method parse_method(const std::string& name);
std::string method_name(Method method);
std::vector<std::string> method_names();

/// Per-method knobs with library defaults. Detector design intensity and
/// noise level always come from the scenario being run.
struct MethodConfig {
  Method method = Method::Sdt;

  // CDT
  double cdt_p_fa = 1e-4;

  // SDT
  double sdt_alpha = 0.01;
  double sdt_beta = 0.05;
  double sdt_p_fa_trunc = 1e-4;
  int sdt_s_m = 3;
  int sdt_radius = 1;
  double sdt_seed_exceedance = 0.3;

  // PDA tracker behind CDT/SDT
  double pda_gate_radius = 5.0;
  double pda_pd_design = 0.9;
  int pda_n_particles = 2000;
  int pda_max_coast_frames = 5;

  // TBD family
  ExistenceModel existence;
  int tbd_n_particles = 4000;
  double tbd_declare_threshold = 0.5;
  double tbd_birth_exceedance = 0.3;
  double tbd_birth_velocity_std = 1.0;

  friend bool operator==(const MethodConfig&, const MethodConfig&) = default;
};

/// Optional per-run stream capture for CSV dumps.
struct RunStreams {
  std::vector<Detection> detections;
  struct EstimateRow {
    int frame;
    StateVector state;
    double trace_cov;
  };
  std::vector<EstimateRow> estimates;
  struct TbdRow {
    int frame;
    double p_exist;
    bool declared;
    StateVector state;  // meaningful only when declared
  };
  std::vector<TbdRow> tbd;
};

/// One seeded end-to-end run: truth + frames from the scenario stream,
/// frames fed to the method in order, declarations and estimates recorded
/// per frame.
RunRecord run_one(const ScenarioConfig& scenario, const MethodConfig& method,
                  std::uint64_t run_seed, RunStreams* streams = nullptr);

/// n_runs independent runs; run i is seeded from (master_seed, i), so the
/// frame stream for run i is identical across methods. jobs > 1 distributes
/// runs over threads; results are identical regardless of jobs.
std::vector<RunRecord> run_monte_carlo(const ScenarioConfig& scenario,
                                       const MethodConfig& method, int n_runs,
                                       std::uint64_t master_seed, int jobs = 1);

}  // namespace dimtrack
