#include "ranctl/harness/f1_eval.hpp"

#include "ranctl/rapp/f1_model.hpp"

namespace ranctl::harness {

namespace {

double mean_f1(const rapp::F1Model& m, const xapp::SampleMatrix& s, std::size_t ue,
               std::int64_t from, std::int64_t to) {
  double sum = 0.0;
  for (auto w = from; w < to; ++w) sum += rapp::bitrate_to_f1(m, s.at(static_cast<std::size_t>(w), ue));
  return sum / static_cast<double>(to - from);
}

}  // namespace

std::vector<F1Comparison> compare_f1(const ExperimentSpec& spec, const RunResult& run) {
  std::vector<F1Comparison> out;
  for (double b : spec.f1_b_values) {
    const auto model = rapp::fit_model(b);
    for (const auto& ep : run.episodes) {
      if (!ep.framing) continue;
      F1Comparison c;
      c.b = b;
      c.episode = ep.index;
      c.framing_ue = spec.topology.index_of(*ep.framing);
      for (std::size_t j = 0; j < spec.topology.cameras.size(); ++j) {
        if (spec.topology.are_opposite(c.framing_ue, j)) c.far_ue = j;
      }
      const auto from = ep.first_eval_window;
      const auto to = ep.end_window;
      c.prioritized_run = mean_f1(model, run.throughput, c.framing_ue, from, to);
      c.prioritized_baseline = mean_f1(model, run.baseline, c.framing_ue, from, to);
      if (c.far_ue) {
        c.far_run = mean_f1(model, run.throughput, *c.far_ue, from, to);
        c.far_baseline = mean_f1(model, run.baseline, *c.far_ue, from, to);
      }
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace ranctl::harness
