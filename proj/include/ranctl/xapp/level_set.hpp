#pragma once

#include <cstdint>
#include <vector>

#include "ranctl/xapp/ccdf.hpp"

namespace ranctl::xapp {

/// Integer coordinates on the evaluation grid {0, delta, 2*delta, ...}.
using GridPoint = std::vector<std::int64_t>;

struct LevelSet {
  double q = 0.0;
  double delta = 0.0;
  std::vector<GridPoint> points;  // sorted

  std::vector<double> values(std::size_t i) const;
};

/// Largest grid index i with i*delta <= value (evaluated in double arithmetic,
/// so it agrees with estimate_ccdf's comparisons).
std::int64_t grid_floor(double value, double delta);

/// Smallest number of dominating rows k with k / rows >= q.
std::size_t min_dominating_rows(double q, std::size_t rows);

/// Pareto-maximal grid points among {phi : S(phi) >= q}.
///
/// Every maximal point is the coordinate-wise minimum of some set of >= k
/// rows, so candidate coordinates are restricted to quantized row values and
/// the search recurses one dimension at a time.
LevelSet extract_level_set(const SampleMatrix& samples, double q, double delta);

}  // namespace ranctl::xapp
