#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "ranctl/harness/closed_loop.hpp"
#include "ranctl/harness/experiment.hpp"

namespace ranctl::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInfeasible = 3;

/// Writes <output_dir>/sweep.csv.
int cmd_sweep(const ExperimentSpec& spec, std::ostream& log);

/// Reads the sweep and writes <output_dir>/policy_table.json.
int cmd_build(const ExperimentSpec& spec, std::ostream& log);

struct RunFlags {
  bool force_ones = false;
  std::optional<LoopMode> mode;
};

/// Closed loop plus baseline. Writes throughput.csv, baseline_throughput.csv,
/// episodes.csv, beta_history.csv, report.json (and f1.csv for camera runs).
/// Refuses a policy table whose config hash differs from the spec's. Returns
/// kExitInfeasible if any requirement could not be served.
int cmd_run(const ExperimentSpec& spec, const RunFlags& flags, std::ostream& log,
            RunResult* result = nullptr);

/// Recomputes P_S / delta P_S per episode from a run directory's CSVs and
/// prints `episode,requirement,p_success,baseline,delta_p_success` plus the mean.
int cmd_eval(const std::filesystem::path& run_dir, std::ostream& out);

/// `b,x,f1` curves through the default anchors.
int cmd_curves(const std::vector<double>& bs, int points, std::ostream& out);

}  // namespace ranctl::harness
