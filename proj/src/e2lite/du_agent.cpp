#include "ranctl/e2lite/du_agent.hpp"

namespace ranctl::e2lite {

void DuAgent::submit_control(ControlMessage msg, double deliver_at_ms) {
  msg.validate(sim_.config().n_ues);
  pending_.push_back({std::move(msg), deliver_at_ms});
}

DuStep DuAgent::step() {
  DuStep out;
  const double now = sim_.now_ms();
  std::vector<Pending> later;
  for (auto& p : pending_) {
    if (p.deliver_at_ms <= now) {
      out.acks.push_back(apply_control(p.msg, sim_));
    } else {
      later.push_back(std::move(p));
    }
  }
  pending_ = std::move(later);

  out.report = sim_.step_tti();
  if (sim_.tti_index() % sim_.config().ttis_per_window() == 0) {
    const auto samples = sim_.measure_window(sim_.completed_windows() - 1);
    out.indication = publish_indication(next_seq_++, sim_.now_ms(), samples);
  }
  return out;
}

}  // namespace ranctl::e2lite
