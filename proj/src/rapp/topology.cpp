#include "ranctl/rapp/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ranctl/error.hpp"

namespace ranctl::rapp {

namespace {

bool has_pair(const std::vector<std::pair<std::size_t, std::size_t>>& pairs, std::size_t i,
              std::size_t j) {
  return std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) {
    return (p.first == i && p.second == j) || (p.first == j && p.second == i);
  });
}

}  // namespace

std::size_t CameraTopology::index_of(const std::string& id) const {
  const auto it = std::find(cameras.begin(), cameras.end(), id);
  if (it == cameras.end()) throw ValidationError("unknown camera '" + id + "'");
  return static_cast<std::size_t>(it - cameras.begin());
}

bool CameraTopology::are_adjacent(std::size_t i, std::size_t j) const {
  return has_pair(adjacent, i, j);
}

bool CameraTopology::are_opposite(std::size_t i, std::size_t j) const {
  return has_pair(opposite, i, j);
}

void CameraTopology::validate() const {
  if (cameras.empty()) throw ValidationError("topology has no cameras");
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    for (std::size_t j = i + 1; j < cameras.size(); ++j) {
      if (cameras[i] == cameras[j]) throw ValidationError("duplicate camera '" + cameras[i] + "'");
    }
  }
  std::vector<int> opposite_count(cameras.size(), 0);
  for (const auto* rel : {&adjacent, &opposite}) {
    for (const auto& [i, j] : *rel) {
      if (i >= cameras.size() || j >= cameras.size() || i == j) {
        throw ValidationError("topology relation references an invalid camera pair");
      }
    }
  }
  for (const auto& [i, j] : opposite) {
    if (are_adjacent(i, j)) throw ValidationError("cameras cannot be both adjacent and opposite");
    if (++opposite_count[i] > 1 || ++opposite_count[j] > 1) {
      throw ValidationError("a camera can have at most one opposite");
    }
  }
}

CameraTopology default_topology() {
  return {{"cam1", "cam2", "cam3", "cam4"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 2}, {1, 3}}};
}

CameraTopology parse_topology(const std::string& json_text) {
  CameraTopology t;
  try {
    const auto j = nlohmann::json::parse(json_text);
    t.cameras = j.at("cameras").get<std::vector<std::string>>();
    auto pairs = [&](const char* key) {
      std::vector<std::pair<std::size_t, std::size_t>> out;
      if (!j.contains(key)) return out;
      for (const auto& p : j.at(key)) {
        const auto ids = p.get<std::vector<std::string>>();
        if (ids.size() != 2) throw ValidationError(std::string(key) + " entries must be id pairs");
        out.emplace_back(t.index_of(ids[0]), t.index_of(ids[1]));
      }
      return out;
    };
    t.adjacent = pairs("adjacent");
    t.opposite = pairs("opposite");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("topology: ") + e.what());
  }
  t.validate();
  return t;
}

CameraTopology load_topology(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open topology " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_topology(buf.str());
}

void PriorityProfile::validate() const {
  if (!(framing_mbps >= adjacent_mbps && adjacent_mbps >= far_mbps && far_mbps >= 0.0)) {
    throw ValidationError("priority profile needs framing >= adjacent >= far >= 0");
  }
}

PriorityProfile PriorityProfile::scaled(double factor) const {
  if (!(factor > 0.0)) throw ValidationError("requirement scale must be positive");
  return {framing_mbps * factor, adjacent_mbps * factor, far_mbps * factor};
}

std::vector<double> requirements_from_detection(const std::string& framing_camera,
                                                const CameraTopology& topology,
                                                const PriorityProfile& profile) {
  profile.validate();
  const std::size_t f = topology.index_of(framing_camera);
  std::vector<double> out(topology.cameras.size(), profile.far_mbps);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i == f) {
      out[i] = profile.framing_mbps;
    } else if (topology.are_adjacent(f, i)) {
      out[i] = profile.adjacent_mbps;
    }
  }
  return out;
}

}  // namespace ranctl::rapp
