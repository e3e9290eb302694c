#pragma once

#include <cstdint>
#include <ostream>
#include <istream>
#include <stdexcept>
#include <vector>

#include "ranctl/ransim/sim_config.hpp"
#include "ranctl/xapp/beta_grid.hpp"
#include "ranctl/xapp/ccdf.hpp"

namespace ranctl::xapp {

struct SweepOptions {
  std::int64_t warmup_windows = 40;
  std::int64_t windows = 200;  // W_min
  unsigned threads = 0;        // 0 = hardware concurrency
};

struct SweepEntry {
  BetaVector betas;
  SampleMatrix samples;  // Mbit/s
};

struct SweepDataset {
  std::vector<double> grid;
  std::size_t n_ues = 0;
  double window_ms = 0.0;
  std::vector<SweepEntry> entries;  // lexicographic beta order
};

/// Raised when one beta vector's simulation fails; names the vector.
class SweepError : public std::runtime_error {
 public:
  SweepError(BetaVector betas, const std::string& what);
  const BetaVector& betas() const { return betas_; }

 private:
  BetaVector betas_;
};

/// Simulates every beta vector of grid^N with the same seed (common random
/// numbers) and records the throughput vector of each T_A window after warmup.
SweepDataset run_sweep(const BetaGrid& grid, const ransim::SimConfig& base,
                       const SweepOptions& options = {});

/// Samples for one beta vector from a fresh simulation.
SampleMatrix simulate_windows(const ransim::SimConfig& base, const BetaVector& betas,
                              std::int64_t warmup_windows, std::int64_t windows);

/// CSV `beta_vec,window,ue,throughput`; beta_vec is ';'-joined.
void write_sweep_csv(std::ostream& out, const SweepDataset& data);
SweepDataset read_sweep_csv(std::istream& in, double window_ms);

}  // namespace ranctl::xapp
