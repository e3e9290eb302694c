#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ranctl/ransim/simulator.hpp"
#include "ranctl/units.hpp"

namespace ranctl::e2lite {

struct UeReport {
  UeId ue = 0;
  double mbps = 0.0;

  friend bool operator==(const UeReport&, const UeReport&) = default;
};

/// DU -> RIC, once per completed measurement window.
struct IndicationMessage {
  std::int64_t seq = 0;
  double timestamp_ms = 0.0;
  std::int64_t window_index = 0;
  std::vector<UeReport> samples;

  /// Every UE in [0, n_ues) reported exactly once, values finite and >= 0.
  void validate(std::size_t n_ues) const;
  friend bool operator==(const IndicationMessage&, const IndicationMessage&) = default;
};

/// RIC -> DU: new beta vector.
struct ControlMessage {
  std::int64_t seq = 0;
  double issued_at_ms = 0.0;
  std::vector<double> betas;

  /// Throws ValidationError on wrong length or a beta outside [0,1].
  void validate(std::size_t n_ues) const;
  friend bool operator==(const ControlMessage&, const ControlMessage&) = default;
};

/// DU -> RIC: the control with this seq took effect at applied_at_ms.
struct ControlAck {
  std::int64_t seq = 0;
  double applied_at_ms = 0.0;

  friend bool operator==(const ControlAck&, const ControlAck&) = default;
};

struct LoopKpis {
  double xapp_processing_ms = 0.0;
  double control_loop_ms = 0.0;
  std::optional<double> control_latency_ms;  // absent if never satisfied
};

IndicationMessage publish_indication(std::int64_t seq, double timestamp_ms,
                                     std::span<const ransim::ThroughputSample> window);

/// Validates and swaps the simulator's betas; they govern every TTI from now on.
ControlAck apply_control(const ControlMessage& msg, ransim::Simulator& sim);

}  // namespace ranctl::e2lite
