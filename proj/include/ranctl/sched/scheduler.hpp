#pragma once

// Tunable proportional-fair uplink scheduler.
//
// Each UE i carries a priority coefficient gamma_i = theta_i / D_i where
//
//   D_i[n] = ((1 - alpha) * D_i[n-1] + alpha * phi_i[n]) ^ beta_i
//
// theta_i is the achievable (or requested) rate and phi_i[n] the rate served
// in TTI n. beta_i in [0,1] is the per-UE knob: lowering it shrinks D_i and so
// raises the UE's priority. With every beta_i = 1 this is textbook PF.
//
// All rates are bits/ms.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ranctl/units.hpp"

namespace ranctl::sched {

/// Lower bound on D so that gamma stays finite for long-idle UEs.
inline constexpr double kDenominatorFloor = 1e-6;

/// Buffer occupancy used for full-buffer (saturated) UEs.
inline constexpr std::uint64_t kSaturatedBuffer = std::uint64_t{1} << 62;

struct SchedulerParams {
  double alpha = 0.01;
  std::vector<double> betas;
  double d_init = 1.0;

  /// Throws ValidationError unless 0<=alpha<=1, d_init>0, betas.size()==n_ues
  /// and every beta in [0,1].
  void validate(std::size_t n_ues) const;
};

struct UeSchedState {
  UeId ue = 0;
  double d_prev = 1.0;    // D_i[n-1]
  double theta = 0.0;     // theta_i[n]
  double phi_inst = 0.0;  // phi_i[n]
  double gamma = 0.0;     // gamma_i[n]
};

/// Per-TTI scheduler input for one UE.
struct UeInput {
  double theta = 0.0;             // bits/ms
  std::uint64_t buffer_bits = 0;  // queued bits at TTI start
  std::uint32_t bits_per_rb = 1;  // achievable bits per granted RB this TTI
};

/// rb_count per UE, indexed by UeId.
using Allocation = std::vector<std::uint32_t>;

double update_denominator(double d_prev, double phi_inst, double alpha, double beta);

/// theta / d. Throws ContractViolation when d <= 0.
double compute_priority(double theta, double d);

/// Bits actually carried by `rbs` grants against a buffer of `buffer_bits`.
std::uint64_t served_bits(std::uint32_t rbs, std::uint32_t bits_per_rb, std::uint64_t buffer_bits);

/// Greedy per-RB allocation.
///
/// Every RB goes to the backlogged UE with the largest tentative gamma, where
/// the tentative gamma uses D_i[n] evaluated with the bits already granted to
/// that UE in this TTI. A UE stops being backlogged once its grants cover its
/// buffer. If RBs remain after all buffers are covered they are padded onto
/// the UE with the highest tentative gamma. Ties go to the lowest UeId.
Allocation schedule_tti(std::span<const UeSchedState> states, std::span<const UeInput> inputs,
                        std::uint32_t n_rbs, const SchedulerParams& params, double tti_ms);

/// Applies the D update with each UE's realized phi (served bits / tti_ms);
/// refreshes theta and gamma.
void end_of_tti_update(std::span<UeSchedState> states, std::span<const UeInput> inputs,
                       std::span<const std::uint64_t> served, const SchedulerParams& params,
                       double tti_ms);

/// Owns per-UE state and parameters; the simulator drives it once per TTI.
class TunablePfScheduler {
 public:
  TunablePfScheduler(std::size_t n_ues, SchedulerParams params);

  Allocation schedule(std::span<const UeInput> inputs, std::uint32_t n_rbs, double tti_ms) const;
  void commit(std::span<const UeInput> inputs, std::span<const std::uint64_t> served,
              double tti_ms);

  /// Replaces the whole beta vector. Must only be called between TTIs.
  void set_betas(std::vector<double> betas);

  const SchedulerParams& params() const { return params_; }
  std::span<const UeSchedState> states() const { return states_; }
  std::size_t n_ues() const { return states_.size(); }

 private:
  SchedulerParams params_;
  std::vector<UeSchedState> states_;
};

}  // namespace ranctl::sched
