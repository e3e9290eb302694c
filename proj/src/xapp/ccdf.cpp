#include "ranctl/xapp/ccdf.hpp"

#include "ranctl/error.hpp"

namespace ranctl::xapp {

void SampleMatrix::append_row(std::span<const double> row) {
  if (row.size() != n_cols_) throw ContractViolation("sample row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
}

std::size_t count_dominating(const SampleMatrix& samples, std::span<const double> phi) {
  if (phi.size() != samples.cols()) throw ContractViolation("phi length != sample columns");
  std::size_t count = 0;
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    const auto row = samples.row(r);
    bool all = true;
    for (std::size_t c = 0; c < row.size() && all; ++c) all = row[c] >= phi[c];
    count += all ? 1 : 0;
  }
  return count;
}

double estimate_ccdf(const SampleMatrix& samples, std::span<const double> phi) {
  if (samples.rows() == 0) throw ContractViolation("estimate_ccdf on an empty sample matrix");
  return static_cast<double>(count_dominating(samples, phi)) /
         static_cast<double>(samples.rows());
}

}  // namespace ranctl::xapp
