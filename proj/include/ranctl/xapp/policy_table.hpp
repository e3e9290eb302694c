#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ranctl/xapp/beta_grid.hpp"
#include "ranctl/xapp/level_set.hpp"
#include "ranctl/xapp/sweep.hpp"

namespace ranctl::xapp {

struct PolicyMetadata {
  double q = 0.99;
  double delta = 0.1;  // Mbit/s per grid step
  std::vector<double> beta_grid;
  double window_ms = 50.0;
  std::string config_hash;
  std::size_t n_ues = 0;
};

/// Throughput point (grid key) -> every beta vector whose level set holds it.
struct PolicyTable {
  static constexpr int kVersion = 1;

  PolicyMetadata meta;
  std::map<GridPoint, std::vector<BetaVector>> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<double> key_values(const GridPoint& key) const;
};

PolicyTable build_policy_table(const SweepDataset& data, double q, double delta,
                               std::string config_hash);

std::string policy_table_to_json(const PolicyTable& table);
PolicyTable policy_table_from_json(const std::string& text);

void save_policy_table(const PolicyTable& table, const std::filesystem::path& path);
PolicyTable load_policy_table(const std::filesystem::path& path);

}  // namespace ranctl::xapp
