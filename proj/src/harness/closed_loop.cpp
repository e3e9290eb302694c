#include "ranctl/harness/closed_loop.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <thread>

#include "ranctl/e2lite/du_agent.hpp"
#include "ranctl/e2lite/transport.hpp"
#include "ranctl/error.hpp"
#include "ranctl/xapp/selector.hpp"

namespace ranctl::harness {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// RIC side: turns requirement steps into controls when the indication that
/// closes the preceding window arrives.
class Ric {
 public:
  Ric(const xapp::PolicyTable& table, const std::vector<RequirementStep>& schedule,
      const LoopOptions& loop, bool wall_clock)
      : table_(table), loop_(loop), wall_clock_(wall_clock) {
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      EpisodeResult e;
      e.index = i;
      e.start_window = schedule[i].window;
      e.requirement = schedule[i].mbps;
      e.framing = schedule[i].framing;
      by_window_[schedule[i].window] = i;
      episodes_.push_back(std::move(e));
    }
  }

  std::vector<e2lite::ControlMessage> on_indication(const e2lite::IndicationMessage& ind) {
    const auto it = by_window_.find(ind.window_index + 1);
    if (it == by_window_.end()) return {};
    auto& ep = episodes_[it->second];
    const auto t0 = Clock::now();
    ep.requirement_at_ms = ind.timestamp_ms;
    ep.decision_at_ms = ind.timestamp_ms + loop_.xapp_processing_ms;
    std::vector<e2lite::ControlMessage> out;
    try {
      const auto q = xapp::select_betas(table_, {ep.requirement, loop_.selection_seed + ep.index});
      ep.betas = q.betas;
      ep.survivors = q.survivors;
      auto betas = loop_.force_ones ? xapp::BetaVector(q.betas.size(), 1.0) : q.betas;
      out.push_back({static_cast<std::int64_t>(ep.index), ep.decision_at_ms, std::move(betas)});
    } catch (const xapp::InfeasibleRequirement& e) {
      ep.infeasible = true;
      ep.note = e.what();
    }
    if (wall_clock_) {
      wall_.xapp_processing_ms.push_back(ms_since(t0));
      if (!out.empty()) started_[ep.index] = t0;
    }
    return out;
  }

  void on_ack(const e2lite::ControlAck& ack) {
    auto& ep = episodes_.at(static_cast<std::size_t>(ack.seq));
    ep.applied_at_ms = ack.applied_at_ms;
    if (wall_clock_) {
      const auto it = started_.find(ep.index);
      if (it != started_.end()) wall_.control_loop_ms.push_back(ms_since(it->second));
    }
  }

  std::vector<EpisodeResult>& episodes() { return episodes_; }
  const WallClockKpis& wall() const { return wall_; }

 private:
  const xapp::PolicyTable& table_;
  LoopOptions loop_;
  bool wall_clock_;
  std::vector<EpisodeResult> episodes_;
  std::map<std::int64_t, std::size_t> by_window_;
  std::map<std::size_t, Clock::time_point> started_;
  WallClockKpis wall_;
};

class RicLink {
 public:
  virtual ~RicLink() = default;
  virtual void send_ack(const e2lite::ControlAck& ack) = 0;
  virtual std::vector<e2lite::ControlMessage> exchange(const e2lite::IndicationMessage& ind) = 0;
  virtual void finish() {}
};

class DirectLink : public RicLink {
 public:
  explicit DirectLink(Ric& ric) : ric_(ric) {}
  void send_ack(const e2lite::ControlAck& ack) override { ric_.on_ack(ack); }
  std::vector<e2lite::ControlMessage> exchange(const e2lite::IndicationMessage& ind) override {
    return ric_.on_indication(ind);
  }

 private:
  Ric& ric_;
};

/// DU end of a socket pair; the RIC serves the other end on its own thread.
/// Each indication is answered by zero or more controls and then an ack
/// carrying the indication's seq, which keeps both sides in lockstep.
class SocketLink : public RicLink {
 public:
  explicit SocketLink(Ric& ric) {
    auto [du_fd, ric_fd] = e2lite::make_socket_pair();
    du_ = std::make_unique<e2lite::FrameChannel>(du_fd);
    ric_chan_ = std::make_unique<e2lite::FrameChannel>(ric_fd);
    server_ = std::thread([this, &ric] { serve(ric); });
  }
  ~SocketLink() override {
    try {
      finish();
    } catch (...) {
    }
  }

  void send_ack(const e2lite::ControlAck& ack) override { du_->send(ack); }

  std::vector<e2lite::ControlMessage> exchange(const e2lite::IndicationMessage& ind) override {
    du_->send(ind);
    std::vector<e2lite::ControlMessage> out;
    while (true) {
      auto frame = du_->receive();
      if (!frame) throw std::runtime_error("RIC closed the E2 link");
      if (auto* c = std::get_if<e2lite::ControlMessage>(&*frame)) {
        out.push_back(std::move(*c));
      } else if (auto* a = std::get_if<e2lite::ControlAck>(&*frame); a && a->seq == ind.seq) {
        return out;
      } else {
        throw std::runtime_error("unexpected frame from RIC");
      }
    }
  }

  void finish() override {
    if (!server_.joinable()) return;
    du_->shutdown_write();
    server_.join();
    if (error_) std::rethrow_exception(error_);
  }

 private:
  void serve(Ric& ric) {
    try {
      while (auto frame = ric_chan_->receive()) {
        if (auto* ind = std::get_if<e2lite::IndicationMessage>(&*frame)) {
          for (const auto& c : ric.on_indication(*ind)) ric_chan_->send(c);
          ric_chan_->send(e2lite::ControlAck{ind->seq, ind->timestamp_ms});
        } else if (auto* ack = std::get_if<e2lite::ControlAck>(&*frame)) {
          ric.on_ack(*ack);
        } else {
          throw std::runtime_error("unexpected control frame at the RIC");
        }
      }
    } catch (...) {
      error_ = std::current_exception();
    }
    ric_chan_->shutdown_write();
  }

  std::unique_ptr<e2lite::FrameChannel> du_;
  std::unique_ptr<e2lite::FrameChannel> ric_chan_;
  std::thread server_;
  std::exception_ptr error_;
};

xapp::SampleMatrix baseline_run(ransim::SimConfig cfg) {
  cfg.initial_betas.assign(cfg.n_ues, 1.0);
  ransim::Simulator sim(cfg);
  xapp::SampleMatrix out(cfg.n_ues);
  std::vector<double> row(cfg.n_ues);
  const std::int64_t k = cfg.ttis_per_window();
  for (std::int64_t t = 0; t < cfg.total_ttis(); ++t) {
    sim.step_tti();
    if (sim.tti_index() % k == 0) {
      for (const auto& s : sim.measure_window(sim.completed_windows() - 1)) row[s.ue] = s.value_mbps;
      out.append_row(row);
    }
  }
  return out;
}

xapp::SampleMatrix slice(const xapp::SampleMatrix& m, std::int64_t from, std::int64_t to) {
  xapp::SampleMatrix out(m.cols());
  for (auto r = from; r < to; ++r) out.append_row(m.row(static_cast<std::size_t>(r)));
  return out;
}

}  // namespace

bool RunResult::any_infeasible() const {
  for (const auto& e : episodes) {
    if (e.infeasible) return true;
  }
  return false;
}

double RunResult::mean_p_success() const {
  double sum = 0.0;
  for (const auto& e : episodes) sum += e.success.p_success;
  return episodes.empty() ? 0.0 : sum / static_cast<double>(episodes.size());
}

double RunResult::mean_delta() const {
  double sum = 0.0;
  for (const auto& e : episodes) sum += e.success.delta;
  return episodes.empty() ? 0.0 : sum / static_cast<double>(episodes.size());
}

std::vector<e2lite::KpiSample> sliding_samples(
    const std::vector<std::vector<std::uint64_t>>& tti_bits, std::int64_t ttis_per_window,
    double tti_ms, const std::vector<double>& requirement, std::int64_t from_tti,
    std::int64_t to_tti) {
  const std::size_t n = requirement.size();
  std::vector<e2lite::KpiSample> out;
  std::vector<std::uint64_t> sum(n, 0);
  const std::int64_t first = std::max<std::int64_t>(from_tti, ttis_per_window - 1);
  for (auto t = first - ttis_per_window + 1; t < first; ++t) {
    for (std::size_t u = 0; u < n; ++u) sum[u] += tti_bits[static_cast<std::size_t>(t)][u];
  }
  const double window_ms = static_cast<double>(ttis_per_window) * tti_ms;
  for (auto t = first; t < to_tti; ++t) {
    const auto& now = tti_bits[static_cast<std::size_t>(t)];
    bool ok = true;
    for (std::size_t u = 0; u < n; ++u) {
      sum[u] += now[u];
      ok = ok && window_rate_mbps(sum[u], window_ms) >= requirement[u];
    }
    out.push_back({static_cast<double>(t + 1) * tti_ms, ok});
    const auto& old = tti_bits[static_cast<std::size_t>(t - ttis_per_window + 1)];
    for (std::size_t u = 0; u < n; ++u) sum[u] -= old[u];
  }
  return out;
}

RunResult run_closed_loop(const ransim::SimConfig& sim_config, const xapp::PolicyTable& table,
                          const std::vector<RequirementStep>& schedule,
                          std::int64_t total_windows, const LoopOptions& loop) {
  ransim::SimConfig cfg = sim_config;
  cfg.sim_duration_ms = static_cast<double>(total_windows) * cfg.measurement_window_ms;
  cfg.validate();
  if (table.meta.n_ues != cfg.n_ues) throw ValidationError("policy table UE count differs from the cell");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i].window < 1 || schedule[i].window >= total_windows ||
        (i > 0 && schedule[i].window <= schedule[i - 1].window)) {
      throw ValidationError("requirement windows must increase within the run");
    }
  }

  const bool socket = loop.mode == LoopMode::kSocket;
  Ric ric(table, schedule, loop, socket);
  std::unique_ptr<RicLink> link;
  if (socket) {
    link = std::make_unique<SocketLink>(ric);
  } else {
    link = std::make_unique<DirectLink>(ric);
  }

  ransim::Simulator sim(cfg);
  e2lite::DuAgent du(sim);
  RunResult result;
  result.throughput = xapp::SampleMatrix(cfg.n_ues);
  result.beta_history.push_back({0.0, cfg.betas_or_default()});
  std::vector<std::vector<std::uint64_t>> tti_bits;
  tti_bits.reserve(static_cast<std::size_t>(cfg.total_ttis()));
  std::vector<double> row(cfg.n_ues);

  for (std::int64_t t = 0; t < cfg.total_ttis(); ++t) {
    auto step = du.step();
    if (!step.acks.empty()) {
      result.beta_history.push_back({step.acks.back().applied_at_ms, sim.scheduler().params().betas});
    }
    for (const auto& ack : step.acks) link->send_ack(ack);
    std::vector<std::uint64_t> bits(cfg.n_ues);
    for (std::size_t u = 0; u < cfg.n_ues; ++u) bits[u] = step.report.ues[u].bits_served;
    tti_bits.push_back(std::move(bits));
    if (step.indication) {
      for (const auto& s : step.indication->samples) row[s.ue] = s.mbps;
      result.throughput.append_row(row);
      for (auto& c : link->exchange(*step.indication)) {
        const double deliver = c.issued_at_ms + loop.e2_delay_ms;
        du.submit_control(std::move(c), deliver);
      }
    }
  }
  link->finish();

  result.baseline = baseline_run(cfg);
  const std::int64_t k = cfg.ttis_per_window();
  const double window_ms = cfg.measurement_window_ms;
  auto& episodes = ric.episodes();
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    auto& ep = episodes[i];
    ep.end_window = i + 1 < episodes.size() ? episodes[i + 1].start_window : total_windows;
    if (ep.applied_at_ms) {
      const auto from_tti = static_cast<std::int64_t>(std::llround(ep.requirement_at_ms / cfg.tti_ms));
      e2lite::EpisodeLog log{ep.requirement_at_ms, ep.decision_at_ms, ep.applied_at_ms,
                             sliding_samples(tti_bits, k, cfg.tti_ms, ep.requirement, from_tti,
                                             ep.end_window * k)};
      ep.kpis = e2lite::measure_kpis(log);
      ep.first_eval_window = static_cast<std::int64_t>(std::ceil(*ep.applied_at_ms / window_ms - 1e-9));
    } else {
      ep.first_eval_window = ep.start_window + 1;
    }
    ep.first_eval_window = std::min(ep.first_eval_window, ep.end_window - 1);
    ep.success = xapp::evaluate_success(ep.requirement,
                                        slice(result.throughput, ep.first_eval_window, ep.end_window),
                                        slice(result.baseline, ep.first_eval_window, ep.end_window));
  }
  result.episodes = std::move(episodes);
  if (socket) result.wall = ric.wall();
  return result;
}

}  // namespace ranctl::harness
