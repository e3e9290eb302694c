#pragma once

#include <span>
#include <vector>

#include "ranctl/xapp/ccdf.hpp"

namespace ranctl::xapp {

struct SuccessReport {
  double p_success = 0.0;  // percent of windows where every UE met its requirement
  double baseline = 0.0;   // percent, beta = (1,...,1)
  double delta = 0.0;      // percentage points
  std::size_t windows = 0;
};

bool window_meets(std::span<const double> requirement, std::span<const double> row);

/// Percent of rows in which every UE meets or exceeds its requirement.
double success_rate(std::span<const double> requirement, const SampleMatrix& samples);

SuccessReport evaluate_success(std::span<const double> requirement, const SampleMatrix& run,
                               const SampleMatrix& baseline);

}  // namespace ranctl::xapp
