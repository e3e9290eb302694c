#include "ranctl/xapp/beta_grid.hpp"

#include <algorithm>
#include <string>

#include "ranctl/error.hpp"

namespace ranctl::xapp {

BetaGrid::BetaGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("beta grid must not be empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0)) {
      throw ValidationError("beta grid value " + std::to_string(values_[i]) + " outside [0,1]");
    }
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      throw ValidationError("beta grid values must be strictly increasing");
    }
  }
}

std::uint64_t BetaGrid::cardinality(std::size_t n_ues) const {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < n_ues; ++i) out *= values_.size();
  return out;
}

std::vector<BetaVector> BetaGrid::enumerate(std::size_t n_ues) const {
  const std::uint64_t total = cardinality(n_ues);
  const std::size_t m = values_.size();
  std::vector<BetaVector> out;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    BetaVector v(n_ues);
    std::uint64_t rest = idx;
    for (std::size_t d = n_ues; d-- > 0;) {
      v[d] = values_[rest % m];
      rest /= m;
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool BetaGrid::contains(const BetaVector& betas) const {
  return std::all_of(betas.begin(), betas.end(), [&](double b) {
    return std::find(values_.begin(), values_.end(), b) != values_.end();
  });
}

}  // namespace ranctl::xapp
