#include "ranctl/ransim/simulator.hpp"

#include <string>

#include "ranctl/error.hpp"

namespace ranctl::ransim {

namespace {

sched::SchedulerParams scheduler_params(const SimConfig& c) {
  c.validate();
  return sched::SchedulerParams{c.alpha, c.betas_or_default(), c.d_init};
}

}  // namespace

Simulator::Simulator(SimConfig config)
    : config_(std::move(config)),
      scheduler_(config_.n_ues, scheduler_params(config_)),
      ttis_per_window_(config_.ttis_per_window()),
      served_total_(config_.n_ues, 0) {
  sources_.reserve(config_.n_ues);
  channels_.reserve(config_.n_ues);
  for (UeId i = 0; i < config_.n_ues; ++i) {
    sources_.emplace_back(i, config_.ues[i]);
    channels_.emplace_back(i, config_.ues[i], config_.rng_seed);
  }
}

TtiReport Simulator::step_tti() {
  const std::size_t n = config_.n_ues;
  const double start = now_ms();
  const double tti = config_.tti_ms;

  std::vector<sched::UeInput> inputs(n);
  for (std::size_t i = 0; i < n; ++i) {
    sources_[i].enqueue_until(start + tti);
    const std::uint32_t bpr = channels_[i].advance();
    const double theta = config_.theta_mode == ThetaMode::kAchievable
                             ? static_cast<double>(bpr) * config_.n_rbs_per_tti / tti
                             : mbps_to_bits_per_ms(config_.ues[i].requested_rate_mbps);
    inputs[i] = {theta, sources_[i].buffer_bits(), bpr};
  }

  const sched::Allocation alloc = scheduler_.schedule(inputs, config_.n_rbs_per_tti, tti);

  std::vector<std::uint64_t> served(n);
  for (std::size_t i = 0; i < n; ++i) {
    served[i] = sources_[i].dequeue(
        sched::served_bits(alloc[i], inputs[i].bits_per_rb, inputs[i].buffer_bits));
    served_total_[i] += served[i];
  }
  scheduler_.commit(inputs, served, tti);

  if (tti_ % ttis_per_window_ == 0) window_bits_.resize(window_bits_.size() + n, 0);
  const std::size_t base = window_bits_.size() - n;
  for (std::size_t i = 0; i < n; ++i) window_bits_[base + i] += served[i];

  TtiReport report;
  report.tti = tti_;
  report.start_ms = start;
  report.ues.resize(n);
  const auto states = scheduler_.states();
  for (std::size_t i = 0; i < n; ++i) {
    report.ues[i] = {alloc[i],     served[i],       sources_[i].buffer_bits(),
                     inputs[i].bits_per_rb, states[i].gamma, states[i].d_prev};
  }
  ++tti_;
  return report;
}

std::int64_t Simulator::completed_windows() const { return tti_ / ttis_per_window_; }

std::vector<std::uint64_t> Simulator::window_bits(std::int64_t window_index) const {
  if (window_index < 0 || window_index >= completed_windows()) {
    throw ContractViolation("window " + std::to_string(window_index) + " has not fully elapsed");
  }
  const std::size_t n = config_.n_ues;
  const auto first = window_bits_.begin() + static_cast<std::ptrdiff_t>(window_index * n);
  return {first, first + static_cast<std::ptrdiff_t>(n)};
}

std::vector<ThroughputSample> Simulator::measure_window(std::int64_t window_index) const {
  const auto bits = window_bits(window_index);
  std::vector<ThroughputSample> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out[i] = {static_cast<UeId>(i), window_index,
              window_rate_mbps(bits[i], config_.measurement_window_ms)};
  }
  return out;
}

}  // namespace ranctl::ransim
