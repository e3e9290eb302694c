#pragma once

// Textbook proportional-fair scheduler used as an independent oracle.
// metric = achievable rate / exponentially averaged served rate, RBs granted
// one at a time with the running average updated tentatively inside the TTI.
// Deliberately shares no code with ranctl::sched.

#include <cstdint>
#include <vector>

namespace ranctl::testing {

struct ReferencePfUe {
  double achievable = 0.0;        // bits/ms for a full-TTI grant
  std::uint64_t buffer_bits = 0;
  std::uint32_t bits_per_rb = 1;
};

class ReferencePf {
 public:
  ReferencePf(std::size_t n_ues, double alpha, double avg_init)
      : alpha_(alpha), avg_(n_ues, avg_init) {}

  std::vector<std::uint32_t> allocate(const std::vector<ReferencePfUe>& ues, std::uint32_t n_rbs,
                                      double tti_ms) const {
    const std::size_t n = ues.size();
    std::vector<std::uint32_t> rbs(n, 0);
    std::vector<std::uint64_t> bits(n, 0);
    auto metric = [&](std::size_t i) {
      const double avg = (1.0 - alpha_) * avg_[i] + alpha_ * (static_cast<double>(bits[i]) / tti_ms);
      return ues[i].achievable / avg;
    };
    std::uint32_t given = 0;
    for (; given < n_rbs; ++given) {
      int pick = -1;
      double best = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (bits[i] >= ues[i].buffer_bits) continue;
        const double m = metric(i);
        if (pick < 0 || m > best) {
          pick = static_cast<int>(i);
          best = m;
        }
      }
      if (pick < 0) break;
      auto& u = ues[static_cast<std::size_t>(pick)];
      rbs[static_cast<std::size_t>(pick)] += 1;
      std::uint64_t cap = std::uint64_t{rbs[static_cast<std::size_t>(pick)]} * u.bits_per_rb;
      bits[static_cast<std::size_t>(pick)] = cap < u.buffer_bits ? cap : u.buffer_bits;
    }
    if (given < n_rbs) {
      std::size_t pick = 0;
      for (std::size_t i = 1; i < n; ++i) {
        if (metric(i) > metric(pick)) pick = i;
      }
      rbs[pick] += n_rbs - given;
    }
    return rbs;
  }

  void update(const std::vector<std::uint64_t>& served_bits, double tti_ms) {
    for (std::size_t i = 0; i < avg_.size(); ++i) {
      avg_[i] = (1.0 - alpha_) * avg_[i] + alpha_ * (static_cast<double>(served_bits[i]) / tti_ms);
    }
  }

 private:
  double alpha_;
  std::vector<double> avg_;
};

}  // namespace ranctl::testing
