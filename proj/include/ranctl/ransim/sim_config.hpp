#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ranctl::ransim {

enum class TrafficMode { kCbr, kSaturated };
enum class ChannelModel { kStatic, kLognormal };
enum class ThetaMode { kAchievable, kRequested };

struct UeProfile {
  TrafficMode traffic = TrafficMode::kSaturated;
  double rate_mbps = 0.0;         // CBR rate
  std::uint32_t packet_bits = 12000;
  std::uint32_t bits_per_rb = 200;
  ChannelModel channel = ChannelModel::kStatic;
  double channel_sigma = 0.0;     // lognormal shadowing std-dev (natural log units)
  double requested_rate_mbps = 1.0;  // theta when theta_mode = requested
};

struct SimConfig {
  std::uint32_t n_ues = 1;
  double tti_ms = 1.0;
  std::uint32_t n_rbs_per_tti = 25;
  double measurement_window_ms = 50.0;
  double sim_duration_ms = 10000.0;
  std::uint64_t rng_seed = 1;
  double alpha = 0.01;
  double d_init = 1.0;
  ThetaMode theta_mode = ThetaMode::kAchievable;
  std::vector<double> initial_betas;  // empty means all ones
  std::vector<UeProfile> ues;

  /// Throws ValidationError on any broken invariant.
  void validate() const;

  std::int64_t ttis_per_window() const;
  std::int64_t total_ttis() const;
  std::vector<double> betas_or_default() const;

  /// Canonical key/value text; parse_sim_config(to_kv_text()) round-trips.
  std::string to_kv_text() const;

  /// FNV-1a over every field that shapes capacity and dynamics. Seed and
  /// duration are excluded so a policy table learned on one run is valid for
  /// another with the same cell.
  std::uint64_t capacity_hash() const;
};

/// `key = value` lines, `#` comments. Duplicate keys are rejected.
std::map<std::string, std::string> parse_kv(const std::string& text);

/// Per-UE keys accept either one value (broadcast) or n_ues comma-separated
/// values.
SimConfig parse_sim_config(const std::string& text);
SimConfig load_sim_config(const std::filesystem::path& path);

std::string hash_hex(std::uint64_t h);
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace ranctl::ransim
