#include "ranctl/e2lite/messages.hpp"

#include <cmath>
#include <string>

#include "ranctl/error.hpp"

namespace ranctl::e2lite {

void IndicationMessage::validate(std::size_t n_ues) const {
  if (samples.size() != n_ues) {
    throw ValidationError("indication carries " + std::to_string(samples.size()) +
                          " samples for " + std::to_string(n_ues) + " UEs");
  }
  std::vector<bool> seen(n_ues, false);
  for (const auto& s : samples) {
    if (s.ue >= n_ues || seen[s.ue]) {
      throw ValidationError("indication must report each UE exactly once");
    }
    seen[s.ue] = true;
    if (!(std::isfinite(s.mbps) && s.mbps >= 0.0)) {
      throw ValidationError("indication throughput must be finite and non-negative");
    }
  }
}

void ControlMessage::validate(std::size_t n_ues) const {
  if (betas.size() != n_ues) {
    throw ValidationError("control carries " + std::to_string(betas.size()) + " betas for " +
                          std::to_string(n_ues) + " UEs");
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] >= 0.0 && betas[i] <= 1.0)) {
      throw ValidationError("control beta[" + std::to_string(i) + "] outside [0,1]");
    }
  }
}

IndicationMessage publish_indication(std::int64_t seq, double timestamp_ms,
                                     std::span<const ransim::ThroughputSample> window) {
  IndicationMessage msg;
  msg.seq = seq;
  msg.timestamp_ms = timestamp_ms;
  msg.window_index = window.empty() ? 0 : window.front().window_index;
  for (const auto& s : window) {
    if (s.window_index != msg.window_index) {
      throw ContractViolation("publish_indication: samples from different windows");
    }
    msg.samples.push_back({s.ue, s.value_mbps});
  }
  msg.validate(window.size());
  return msg;
}

ControlAck apply_control(const ControlMessage& msg, ransim::Simulator& sim) {
  msg.validate(sim.config().n_ues);
  sim.set_betas(msg.betas);
  return {msg.seq, sim.now_ms()};
}

}  // namespace ranctl::e2lite
