#pragma once

#include <cstdint>

namespace ranctl {

using UeId = std::uint32_t;

// Rates are carried as bits/ms inside the scheduler and simulator.
// 1 Mbit/s == 1000 bits/ms.
inline constexpr double kBitsPerMsPerMbps = 1000.0;

constexpr double mbps_to_bits_per_ms(double mbps) { return mbps * kBitsPerMsPerMbps; }
constexpr double bits_per_ms_to_mbps(double rate) { return rate / kBitsPerMsPerMbps; }

/// Served bits over a window of `window_ms` expressed in Mbit/s.
constexpr double window_rate_mbps(std::uint64_t bits, double window_ms) {
  return static_cast<double>(bits) / window_ms / kBitsPerMsPerMbps;
}

}  // namespace ranctl
