#pragma once

#include <cstdint>
#include <vector>

#include "ranctl/ransim/channel.hpp"
#include "ranctl/ransim/sim_config.hpp"
#include "ranctl/ransim/traffic.hpp"
#include "ranctl/sched/scheduler.hpp"

namespace ranctl::ransim {

struct UeTti {
  std::uint32_t rbs_allocated = 0;
  std::uint64_t bits_served = 0;
  std::uint64_t buffer_level = 0;  // after service
  std::uint32_t bits_per_rb = 0;
  double gamma = 0.0;
  double d = 0.0;

  friend bool operator==(const UeTti&, const UeTti&) = default;
};

struct TtiReport {
  std::int64_t tti = 0;
  double start_ms = 0.0;
  std::vector<UeTti> ues;

  friend bool operator==(const TtiReport&, const TtiReport&) = default;
};

struct ThroughputSample {
  UeId ue = 0;
  std::int64_t window_index = 0;
  double value_mbps = 0.0;
};

/// Uplink cell: CBR/full-buffer sources, per-UE channels, one scheduler.
/// Deterministic for a given SimConfig.
class Simulator {
 public:
  explicit Simulator(SimConfig config);

  /// Arrivals, channel draw, scheduling, service, D update; advances one TTI.
  TtiReport step_tti();

  /// Window `w` covers TTIs [w*K, (w+1)*K) with K TTIs per window. Throws
  /// ContractViolation if the window has not fully elapsed.
  std::vector<ThroughputSample> measure_window(std::int64_t window_index) const;
  std::vector<std::uint64_t> window_bits(std::int64_t window_index) const;

  /// Number of windows that have fully elapsed.
  std::int64_t completed_windows() const;

  /// Takes effect from the next step_tti().
  void set_betas(std::vector<double> betas) { scheduler_.set_betas(std::move(betas)); }

  std::int64_t tti_index() const { return tti_; }
  double now_ms() const { return static_cast<double>(tti_) * config_.tti_ms; }
  const SimConfig& config() const { return config_; }
  const sched::TunablePfScheduler& scheduler() const { return scheduler_; }
  std::uint64_t cumulative_served(UeId ue) const { return served_total_[ue]; }
  std::uint64_t cumulative_arrived(UeId ue) const { return sources_[ue].arrived_bits(); }

 private:
  SimConfig config_;
  sched::TunablePfScheduler scheduler_;
  std::vector<TrafficSource> sources_;
  std::vector<ChannelState> channels_;
  std::int64_t tti_ = 0;
  std::int64_t ttis_per_window_;
  std::vector<std::uint64_t> served_total_;
  // Flattened [window][ue] served bits, including the window in progress.
  std::vector<std::uint64_t> window_bits_;
};

}  // namespace ranctl::ransim
