#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ranctl/e2lite/kpi.hpp"
#include "ranctl/harness/experiment.hpp"
#include "ranctl/xapp/policy_table.hpp"
#include "ranctl/xapp/success.hpp"

namespace ranctl::harness {

struct BetaChange {
  double applied_at_ms = 0.0;
  xapp::BetaVector betas;
};

struct EpisodeResult {
  std::size_t index = 0;
  std::int64_t start_window = 0;
  std::int64_t end_window = 0;  // exclusive
  std::vector<double> requirement;
  std::optional<std::string> framing;
  bool infeasible = false;
  std::string note;
  std::optional<xapp::BetaVector> betas;
  std::size_t survivors = 0;
  double requirement_at_ms = 0.0;
  double decision_at_ms = 0.0;
  std::optional<double> applied_at_ms;
  std::optional<e2lite::LoopKpis> kpis;
  std::int64_t first_eval_window = 0;  // first window starting at or after application
  xapp::SuccessReport success;
};

/// Wall-clock measurements, socket mode only.
struct WallClockKpis {
  std::vector<double> xapp_processing_ms;
  std::vector<double> control_loop_ms;
};

struct RunResult {
  std::vector<EpisodeResult> episodes;
  xapp::SampleMatrix throughput;  // every window of the run, Mbit/s
  xapp::SampleMatrix baseline;    // same seed, beta = 1 throughout
  std::vector<BetaChange> beta_history;
  std::optional<WallClockKpis> wall;

  bool any_infeasible() const;
  double mean_p_success() const;
  double mean_delta() const;
};

/// Drives DU (simulator + agent) and RIC (xApp selector) on the sim clock.
/// Requirements arrive at window boundaries; the xApp decides
/// xapp_processing_ms later and the control reaches the DU e2_delay_ms after
/// that, taking effect at the next TTI boundary. Both loop modes produce the
/// same sim-clock results.
RunResult run_closed_loop(const ransim::SimConfig& sim, const xapp::PolicyTable& table,
                          const std::vector<RequirementStep>& schedule,
                          std::int64_t total_windows, const LoopOptions& loop);

/// Samples over the trailing window of K TTIs, one per TTI end, where each
/// sample is satisfied when every UE met `requirement`. `tti_bits[t][u]`.
std::vector<e2lite::KpiSample> sliding_samples(
    const std::vector<std::vector<std::uint64_t>>& tti_bits, std::int64_t ttis_per_window,
    double tti_ms, const std::vector<double>& requirement, std::int64_t from_tti,
    std::int64_t to_tti);

}  // namespace ranctl::harness
