#include "ranctl/xapp/success.hpp"

#include "ranctl/error.hpp"

namespace ranctl::xapp {

bool window_meets(std::span<const double> requirement, std::span<const double> row) {
  if (requirement.size() != row.size()) throw ContractViolation("window_meets: length mismatch");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] < requirement[i]) return false;
  }
  return true;
}

double success_rate(std::span<const double> requirement, const SampleMatrix& samples) {
  if (samples.rows() == 0) throw ContractViolation("success_rate: no windows");
  std::size_t hits = 0;
  for (std::size_t r = 0; r < samples.rows(); ++r) hits += window_meets(requirement, samples.row(r));
  return 100.0 * static_cast<double>(hits) / static_cast<double>(samples.rows());
}

SuccessReport evaluate_success(std::span<const double> requirement, const SampleMatrix& run,
                               const SampleMatrix& baseline) {
  SuccessReport r;
  r.p_success = success_rate(requirement, run);
  r.baseline = success_rate(requirement, baseline);
  r.delta = r.p_success - r.baseline;
  r.windows = run.rows();
  return r;
}

}  // namespace ranctl::xapp
