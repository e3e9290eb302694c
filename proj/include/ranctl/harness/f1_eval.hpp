#pragma once

#include <optional>
#include <vector>

#include "ranctl/harness/closed_loop.hpp"
#include "ranctl/harness/experiment.hpp"

namespace ranctl::harness {

/// Mean modeled F1 over an episode's evaluation windows, closed loop vs baseline.
struct F1Comparison {
  double b = 0.0;
  std::size_t episode = 0;
  std::size_t framing_ue = 0;
  std::optional<std::size_t> far_ue;  // opposite camera, if the topology has one
  double prioritized_run = 0.0;
  double prioritized_baseline = 0.0;
  double far_run = 0.0;
  double far_baseline = 0.0;
};

/// One row per (b, framing episode).
std::vector<F1Comparison> compare_f1(const ExperimentSpec& spec, const RunResult& run);

}  // namespace ranctl::harness
