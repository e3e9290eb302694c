#pragma once

#include <cstdint>
#include <random>

#include "ranctl/ransim/sim_config.hpp"
#include "ranctl/units.hpp"

namespace ranctl::ransim {

/// Per-UE spectral-efficiency proxy: achievable bits per RB for the current TTI.
class ChannelState {
 public:
  ChannelState(UeId ue, const UeProfile& profile, std::uint64_t seed);

  /// Draws the next TTI's value. Static channels return the mean.
  std::uint32_t advance();
  std::uint32_t bits_per_rb() const { return current_; }
  UeId ue() const { return ue_; }

 private:
  UeId ue_;
  std::uint32_t mean_;
  ChannelModel model_;
  double sigma_;
  std::uint32_t current_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ranctl::ransim
