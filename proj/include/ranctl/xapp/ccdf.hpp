#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ranctl::xapp {

/// Row-major throughput samples: one row per T_A window, one column per UE.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  explicit SampleMatrix(std::size_t n_cols) : n_cols_(n_cols) {}

  void append_row(std::span<const double> row);

  std::size_t rows() const { return n_cols_ == 0 ? 0 : data_.size() / n_cols_; }
  std::size_t cols() const { return n_cols_; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * n_cols_, n_cols_};
  }
  double at(std::size_t r, std::size_t c) const { return data_[r * n_cols_ + c]; }

 private:
  std::size_t n_cols_ = 0;
  std::vector<double> data_;
};

/// Empirical joint CCDF S(phi): fraction of rows with every coordinate >= phi.
/// Throws ContractViolation for an empty matrix or a length mismatch.
double estimate_ccdf(const SampleMatrix& samples, std::span<const double> phi);

/// Number of rows that dominate phi.
std::size_t count_dominating(const SampleMatrix& samples, std::span<const double> phi);

}  // namespace ranctl::xapp
