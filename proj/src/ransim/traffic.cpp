#include "ranctl/ransim/traffic.hpp"

#include <algorithm>

#include "ranctl/sched/scheduler.hpp"

namespace ranctl::ransim {

TrafficSource::TrafficSource(UeId ue, const UeProfile& profile)
    : ue_(ue),
      saturated_(profile.traffic == TrafficMode::kSaturated),
      packet_bits_(profile.packet_bits) {
  if (!saturated_) {
    interval_ms_ = static_cast<double>(packet_bits_) / mbps_to_bits_per_ms(profile.rate_mbps);
  }
}

void TrafficSource::enqueue_until(double until_ms) {
  if (saturated_) return;
  while (static_cast<double>(next_packet_) * interval_ms_ < until_ms) {
    queue_.push_back({packet_bits_, static_cast<double>(next_packet_) * interval_ms_});
    queued_bits_ += packet_bits_;
    arrived_bits_ += packet_bits_;
    ++next_packet_;
  }
}

std::uint64_t TrafficSource::dequeue(std::uint64_t bits) {
  if (saturated_) {
    arrived_bits_ += bits;
    return bits;
  }
  std::uint64_t removed = 0;
  while (removed < bits && !queue_.empty()) {
    auto& head = queue_.front();
    const std::uint64_t take = std::min(head.remaining_bits, bits - removed);
    head.remaining_bits -= take;
    removed += take;
    if (head.remaining_bits == 0) queue_.pop_front();
  }
  queued_bits_ -= removed;
  return removed;
}

std::uint64_t TrafficSource::buffer_bits() const {
  return saturated_ ? sched::kSaturatedBuffer : queued_bits_;
}

}  // namespace ranctl::ransim
