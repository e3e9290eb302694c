#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace ranctl::rapp {

/// Cameras at sector corners. Camera i is served by UE i.
struct CameraTopology {
  std::vector<std::string> cameras;
  std::vector<std::pair<std::size_t, std::size_t>> adjacent;
  std::vector<std::pair<std::size_t, std::size_t>> opposite;

  /// Throws ValidationError for an unknown id.
  std::size_t index_of(const std::string& id) const;
  bool are_adjacent(std::size_t i, std::size_t j) const;
  bool are_opposite(std::size_t i, std::size_t j) const;
  void validate() const;
};

/// cam1..cam4 on a ring; cam1/cam3 and cam2/cam4 face each other.
CameraTopology default_topology();

/// {"cameras": [...], "adjacent": [[id, id], ...], "opposite": [[id, id], ...]}
CameraTopology parse_topology(const std::string& json_text);
CameraTopology load_topology(const std::filesystem::path& path);

struct PriorityProfile {
  double framing_mbps = 2.0;
  double adjacent_mbps = 1.0;
  double far_mbps = 0.0;

  void validate() const;
  PriorityProfile scaled(double factor) const;
};

/// Framing camera gets framing_mbps, its neighbours adjacent_mbps, every other
/// camera far_mbps. Indexed like topology.cameras.
std::vector<double> requirements_from_detection(const std::string& framing_camera,
                                                const CameraTopology& topology,
                                                const PriorityProfile& profile);

}  // namespace ranctl::rapp
