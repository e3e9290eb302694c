#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ranctl/rapp/topology.hpp"
#include "ranctl/ransim/sim_config.hpp"
#include "ranctl/xapp/sweep.hpp"

namespace ranctl::harness {

/// A requirement that takes effect at the start of measurement window `window`.
/// Either explicit rates or a framing camera resolved through the rApp.
struct RequirementStep {
  std::int64_t window = 0;
  std::vector<double> mbps;
  std::optional<std::string> framing;
};

enum class LoopMode { kInProcess, kSocket };

struct LoopOptions {
  double xapp_processing_ms = 1.0;
  double e2_delay_ms = 35.0;
  std::uint64_t selection_seed = 0;
  LoopMode mode = LoopMode::kInProcess;
  bool force_ones = false;  // send beta = 1 instead of the selected vector
};

struct RunOptions {
  std::uint64_t seed = 2;
  std::int64_t warmup_windows = 20;
  std::int64_t episode_windows = 100;
};

struct ExperimentSpec {
  std::string scenario;
  std::filesystem::path sim_config_path;
  ransim::SimConfig sim;
  std::vector<double> beta_grid;
  double q = 0.99;
  double delta_mbps = 0.1;
  xapp::SweepOptions sweep;
  RunOptions run;
  LoopOptions loop;
  double requirement_scale = 1.0;
  std::vector<RequirementStep> requirements;
  rapp::CameraTopology topology;
  rapp::PriorityProfile profile;
  std::vector<double> f1_b_values;
  std::filesystem::path output_dir;

  /// Identifies the cell and beta grid a policy table was learned on.
  std::string config_hash() const;
  /// Requirement steps with framing cameras resolved and the scale applied.
  std::vector<RequirementStep> resolved_requirements() const;
  std::int64_t total_windows() const;

  std::filesystem::path sweep_path() const { return output_dir / "sweep.csv"; }
  std::filesystem::path table_path() const { return output_dir / "policy_table.json"; }
};

/// Paths inside the spec resolve against the spec file's directory.
ExperimentSpec parse_experiment(const std::string& json_text,
                                const std::filesystem::path& base_dir);
ExperimentSpec load_experiment(const std::filesystem::path& path);

}  // namespace ranctl::harness
