#pragma once

#include <cstdint>
#include <deque>

#include "ranctl/ransim/sim_config.hpp"
#include "ranctl/units.hpp"

namespace ranctl::ransim {

/// Constant-bit-rate packet source with a FIFO buffer, or a full-buffer source.
class TrafficSource {
 public:
  TrafficSource(UeId ue, const UeProfile& profile);

  /// Enqueues every packet whose arrival time falls before `until_ms`.
  void enqueue_until(double until_ms);
  /// Removes up to `bits` from the head of the queue; returns bits removed.
  std::uint64_t dequeue(std::uint64_t bits);

  std::uint64_t buffer_bits() const;
  std::uint64_t arrived_bits() const { return arrived_bits_; }
  bool saturated() const { return saturated_; }
  UeId ue() const { return ue_; }

 private:
  struct Packet {
    std::uint64_t remaining_bits;
    double arrival_ms;
  };

  UeId ue_;
  bool saturated_;
  double interval_ms_ = 0.0;
  std::uint32_t packet_bits_;
  std::uint64_t next_packet_ = 0;
  std::deque<Packet> queue_;
  std::uint64_t queued_bits_ = 0;
  std::uint64_t arrived_bits_ = 0;
};

}  // namespace ranctl::ransim
