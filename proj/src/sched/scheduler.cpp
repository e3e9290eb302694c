#include "ranctl/sched/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ranctl/error.hpp"

namespace ranctl::sched {

void SchedulerParams::validate(std::size_t n_ues) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [0,1], got " + std::to_string(alpha));
  }
  if (!(d_init > 0.0)) {
    throw ValidationError("d_init must be positive");
  }
  if (betas.size() != n_ues) {
    throw ValidationError("expected " + std::to_string(n_ues) + " betas, got " +
                          std::to_string(betas.size()));
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] >= 0.0 && betas[i] <= 1.0)) {
      throw ValidationError("beta[" + std::to_string(i) + "] = " + std::to_string(betas[i]) +
                            " outside [0,1]");
    }
  }
}

double update_denominator(double d_prev, double phi_inst, double alpha, double beta) {
  const double smoothed = (1.0 - alpha) * d_prev + alpha * phi_inst;
  const double d = beta == 1.0 ? smoothed : std::pow(smoothed, beta);
  return std::max(d, kDenominatorFloor);
}

double compute_priority(double theta, double d) {
  if (!(d > 0.0)) throw ContractViolation("compute_priority: denominator must be positive");
  return theta / d;
}

std::uint64_t served_bits(std::uint32_t rbs, std::uint32_t bits_per_rb, std::uint64_t buffer_bits) {
  const std::uint64_t capacity = std::uint64_t{rbs} * bits_per_rb;
  return std::min(capacity, buffer_bits);
}

namespace {

double tentative_gamma(const UeSchedState& s, const UeInput& in, std::uint64_t granted_bits,
                       double alpha, double beta, double tti_ms) {
  const double phi = static_cast<double>(granted_bits) / tti_ms;
  return compute_priority(in.theta, update_denominator(s.d_prev, phi, alpha, beta));
}

}  // namespace

Allocation schedule_tti(std::span<const UeSchedState> states, std::span<const UeInput> inputs,
                        std::uint32_t n_rbs, const SchedulerParams& params, double tti_ms) {
  const std::size_t n = states.size();
  if (inputs.size() != n || params.betas.size() != n) {
    throw ContractViolation("schedule_tti: state/input/beta sizes differ");
  }
  Allocation alloc(n, 0);
  std::vector<std::uint64_t> granted(n, 0);
  std::vector<double> gamma(n);
  for (std::size_t i = 0; i < n; ++i) {
    gamma[i] = tentative_gamma(states[i], inputs[i], 0, params.alpha, params.betas[i], tti_ms);
  }

  std::uint32_t rb = 0;
  for (; rb < n_rbs; ++rb) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (granted[i] >= inputs[i].buffer_bits) continue;
      if (best == n || gamma[i] > gamma[best]) best = i;
    }
    if (best == n) break;
    ++alloc[best];
    granted[best] = served_bits(alloc[best], inputs[best].bits_per_rb, inputs[best].buffer_bits);
    gamma[best] = tentative_gamma(states[best], inputs[best], granted[best], params.alpha,
                                  params.betas[best], tti_ms);
  }

  if (rb < n_rbs && n > 0) {
    // Every buffer is covered; padding grants carry no data and leave gamma unchanged.
    const auto best = static_cast<std::size_t>(
        std::max_element(gamma.begin(), gamma.end(), [](double a, double b) { return a < b; }) -
        gamma.begin());
    alloc[best] += n_rbs - rb;
  }
  return alloc;
}

void end_of_tti_update(std::span<UeSchedState> states, std::span<const UeInput> inputs,
                       std::span<const std::uint64_t> served, const SchedulerParams& params,
                       double tti_ms) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto& s = states[i];
    s.theta = inputs[i].theta;
    s.phi_inst = static_cast<double>(served[i]) / tti_ms;
    s.d_prev = update_denominator(s.d_prev, s.phi_inst, params.alpha, params.betas[i]);
    s.gamma = compute_priority(s.theta, s.d_prev);
  }
}

TunablePfScheduler::TunablePfScheduler(std::size_t n_ues, SchedulerParams params)
    : params_(std::move(params)), states_(n_ues) {
  params_.validate(n_ues);
  for (std::size_t i = 0; i < n_ues; ++i) {
    states_[i].ue = static_cast<UeId>(i);
    states_[i].d_prev = params_.d_init;
  }
}

Allocation TunablePfScheduler::schedule(std::span<const UeInput> inputs, std::uint32_t n_rbs,
                                        double tti_ms) const {
  return schedule_tti(states_, inputs, n_rbs, params_, tti_ms);
}

void TunablePfScheduler::commit(std::span<const UeInput> inputs,
                                std::span<const std::uint64_t> served, double tti_ms) {
  end_of_tti_update(states_, inputs, served, params_, tti_ms);
}

void TunablePfScheduler::set_betas(std::vector<double> betas) {
  SchedulerParams next = params_;
  next.betas = std::move(betas);
  next.validate(states_.size());
  params_ = std::move(next);
}

}  // namespace ranctl::sched
