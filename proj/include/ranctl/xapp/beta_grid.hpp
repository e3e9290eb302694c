#pragma once

#include <cstdint>
#include <vector>

namespace ranctl::xapp {

using BetaVector = std::vector<double>;

/// Candidate values B = {b_1 < ... < b_m} in [0,1]; the swept set is B^N.
class BetaGrid {
 public:
  /// Throws ValidationError unless values are strictly increasing within [0,1].
  explicit BetaGrid(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// |B|^n_ues.
  std::uint64_t cardinality(std::size_t n_ues) const;

  /// Every vector of B^N in lexicographic order (first UE varies slowest).
  std::vector<BetaVector> enumerate(std::size_t n_ues) const;

  bool contains(const BetaVector& betas) const;

 private:
  std::vector<double> values_;
};

}  // namespace ranctl::xapp
