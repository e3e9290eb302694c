#include "ranctl/xapp/level_set.hpp"

#include <algorithm>
#include <cmath>

#include "ranctl/error.hpp"

namespace ranctl::xapp {

std::vector<double> LevelSet::values(std::size_t i) const {
  std::vector<double> out(points[i].size());
  for (std::size_t d = 0; d < out.size(); ++d) out[d] = static_cast<double>(points[i][d]) * delta;
  return out;
}

std::int64_t grid_floor(double value, double delta) {
  if (!(value >= 0.0)) throw ContractViolation("grid_floor: negative or NaN throughput");
  auto i = static_cast<std::int64_t>(std::floor(value / delta));
  while (static_cast<double>(i + 1) * delta <= value) ++i;
  while (i > 0 && static_cast<double>(i) * delta > value) --i;
  return i;
}

std::size_t min_dominating_rows(double q, std::size_t rows) {
  const double n = static_cast<double>(rows);
  auto k = static_cast<std::size_t>(std::ceil(q * n));
  while (k > 0 && static_cast<double>(k - 1) / n >= q) --k;
  while (k <= rows && static_cast<double>(k) / n < q) ++k;
  return k;
}

namespace {

class FrontierSearch {
 public:
  FrontierSearch(std::vector<std::int64_t> quantized, std::size_t n_cols, std::size_t k)
      : q_(std::move(quantized)), n_(n_cols), k_(k) {}

  // Maximal suffixes (coordinates dim..n-1) of the down-set formed by `rows`.
  std::vector<GridPoint> frontier(const std::vector<std::size_t>& rows, std::size_t dim) const {
    if (rows.size() < k_) return {};
    if (dim + 1 == n_) {
      std::vector<std::int64_t> vals;
      vals.reserve(rows.size());
      for (auto r : rows) vals.push_back(at(r, dim));
      std::nth_element(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(k_ - 1),
                       vals.end(), std::greater<>());
      return {GridPoint{vals[k_ - 1]}};
    }

    std::vector<std::int64_t> levels;
    for (auto r : rows) levels.push_back(at(r, dim));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::vector<GridPoint> out;
    std::vector<std::size_t> current = rows;
    for (std::size_t j = 0; j < levels.size(); ++j) {
      if (current.size() < k_) break;
      std::vector<std::size_t> next;
      if (j + 1 < levels.size()) {
        for (auto r : current) {
          if (at(r, dim) >= levels[j + 1]) next.push_back(r);
        }
      }
      for (auto& suffix : frontier(current, dim + 1)) {
        // Dominated if the same suffix is still reachable one level up.
        if (next.size() >= k_ && count_at_least(next, suffix, dim + 1) >= k_) continue;
        GridPoint p;
        p.reserve(suffix.size() + 1);
        p.push_back(levels[j]);
        p.insert(p.end(), suffix.begin(), suffix.end());
        out.push_back(std::move(p));
      }
      current = std::move(next);
    }
    return out;
  }

 private:
  std::int64_t at(std::size_t r, std::size_t c) const { return q_[r * n_ + c]; }

  std::size_t count_at_least(const std::vector<std::size_t>& rows, const GridPoint& suffix,
                             std::size_t dim) const {
    std::size_t count = 0;
    for (auto r : rows) {
      bool all = true;
      for (std::size_t d = 0; d < suffix.size() && all; ++d) all = at(r, dim + d) >= suffix[d];
      count += all ? 1 : 0;
    }
    return count;
  }

  std::vector<std::int64_t> q_;
  std::size_t n_;
  std::size_t k_;
};

}  // namespace

LevelSet extract_level_set(const SampleMatrix& samples, double q, double delta) {
  if (!(q > 0.0 && q <= 1.0)) throw ContractViolation("level set needs 0 < q <= 1");
  if (!(delta > 0.0)) throw ContractViolation("grid step must be positive");
  if (samples.rows() == 0 || samples.cols() == 0) {
    throw ContractViolation("level set of an empty sample matrix");
  }
  const std::size_t rows = samples.rows();
  const std::size_t cols = samples.cols();
  std::vector<std::int64_t> quantized(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) quantized[r * cols + c] = grid_floor(samples.at(r, c), delta);
  }

  const std::size_t k = min_dominating_rows(q, rows);
  std::vector<std::size_t> all(rows);
  for (std::size_t r = 0; r < rows; ++r) all[r] = r;

  LevelSet out{q, delta, FrontierSearch(std::move(quantized), cols, k).frontier(all, 0)};
  std::sort(out.points.begin(), out.points.end());
  return out;
}

}  // namespace ranctl::xapp
