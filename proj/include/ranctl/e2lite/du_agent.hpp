#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ranctl/e2lite/messages.hpp"
#include "ranctl/ransim/simulator.hpp"

namespace ranctl::e2lite {

struct DuStep {
  ransim::TtiReport report;
  std::vector<ControlAck> acks;                  // controls applied before this TTI
  std::optional<IndicationMessage> indication;   // set when the TTI closed a window
};

/// DU-side E2 endpoint. Controls are held until their delivery time and then
/// applied at the next TTI boundary, never inside a TTI.
class DuAgent {
 public:
  explicit DuAgent(ransim::Simulator& sim) : sim_(sim) {}

  /// Validates now; the control reaches the DU at deliver_at_ms.
  void submit_control(ControlMessage msg, double deliver_at_ms);

  DuStep step();

  std::size_t pending_controls() const { return pending_.size(); }
  ransim::Simulator& simulator() { return sim_; }

 private:
  struct Pending {
    ControlMessage msg;
    double deliver_at_ms;
  };

  ransim::Simulator& sim_;
  std::vector<Pending> pending_;
  std::int64_t next_seq_ = 0;
};

}  // namespace ranctl::e2lite
