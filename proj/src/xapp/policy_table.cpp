#include "ranctl/xapp/policy_table.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ranctl/error.hpp"

namespace ranctl::xapp {

std::vector<double> PolicyTable::key_values(const GridPoint& key) const {
  std::vector<double> out(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) out[i] = static_cast<double>(key[i]) * meta.delta;
  return out;
}

PolicyTable build_policy_table(const SweepDataset& data, double q, double delta,
                               std::string config_hash) {
  PolicyTable table;
  table.meta = {q, delta, data.grid, data.window_ms, std::move(config_hash), data.n_ues};
  for (const auto& entry : data.entries) {
    const LevelSet ls = extract_level_set(entry.samples, q, delta);
    for (const auto& point : ls.points) {
      auto& bucket = table.entries[point];
      if (std::find(bucket.begin(), bucket.end(), entry.betas) == bucket.end()) {
        bucket.push_back(entry.betas);
      }
    }
  }
  return table;
}

std::string policy_table_to_json(const PolicyTable& table) {
  nlohmann::ordered_json j;
  j["v"] = PolicyTable::kVersion;
  j["kind"] = "policy_table";
  j["q"] = table.meta.q;
  j["delta_mbps"] = table.meta.delta;
  j["beta_grid"] = table.meta.beta_grid;
  j["window_ms"] = table.meta.window_ms;
  j["config_hash"] = table.meta.config_hash;
  j["n_ues"] = table.meta.n_ues;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, betas] : table.entries) {
    entries.push_back({{"key", key}, {"betas", betas}});
  }
  j["entries"] = std::move(entries);
  return j.dump(1) + "\n";
}

PolicyTable policy_table_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("policy table: ") + e.what());
  }
  if (j.value("kind", "") != "policy_table") throw ValidationError("not a policy table file");
  if (j.value("v", 0) != PolicyTable::kVersion) {
    throw ValidationError("unsupported policy table version");
  }
  PolicyTable t;
  try {
    t.meta.q = j.at("q").get<double>();
    t.meta.delta = j.at("delta_mbps").get<double>();
    t.meta.beta_grid = j.at("beta_grid").get<std::vector<double>>();
    t.meta.window_ms = j.at("window_ms").get<double>();
    t.meta.config_hash = j.at("config_hash").get<std::string>();
    t.meta.n_ues = j.at("n_ues").get<std::size_t>();
    for (const auto& e : j.at("entries")) {
      auto key = e.at("key").get<GridPoint>();
      auto betas = e.at("betas").get<std::vector<BetaVector>>();
      if (key.size() != t.meta.n_ues) throw ValidationError("policy table key length != n_ues");
      t.entries[std::move(key)] = std::move(betas);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("policy table: ") + e.what());
  }
  return t;
}

void save_policy_table(const PolicyTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << policy_table_to_json(table);
}

PolicyTable load_policy_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open policy table " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return policy_table_from_json(buf.str());
}

}  // namespace ranctl::xapp
