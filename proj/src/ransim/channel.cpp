#include "ranctl/ransim/channel.hpp"

#include <algorithm>
#include <cmath>

namespace ranctl::ransim {

ChannelState::ChannelState(UeId ue, const UeProfile& profile, std::uint64_t seed)
    : ue_(ue),
      mean_(profile.bits_per_rb),
      model_(profile.channel),
      sigma_(profile.channel_sigma),
      current_(profile.bits_per_rb) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(ue), 0x636841u};
  rng_.seed(seq);
}

std::uint32_t ChannelState::advance() {
  if (model_ == ChannelModel::kStatic || sigma_ == 0.0) {
    current_ = mean_;
    return current_;
  }
  // Mean-preserving lognormal shadowing, clamped so every RB carries >= 1 bit.
  const double factor = std::exp(sigma_ * normal_(rng_) - 0.5 * sigma_ * sigma_);
  const double value = std::round(static_cast<double>(mean_) * factor);
  current_ = static_cast<std::uint32_t>(std::clamp(value, 1.0, 4.0e9));
  return current_;
}

}  // namespace ranctl::ransim
