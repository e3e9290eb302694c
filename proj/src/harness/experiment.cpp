#include "ranctl/harness/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ranctl/error.hpp"
#include "ranctl/format.hpp"

namespace ranctl::harness {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ValidationError(std::string(where) + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read_opt(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

std::string ExperimentSpec::config_hash() const {
  return ransim::hash_hex(ransim::fnv1a64(ransim::hash_hex(sim.capacity_hash()) + "|" +
                                          join_doubles(beta_grid, ',')));
}

std::vector<RequirementStep> ExperimentSpec::resolved_requirements() const {
  std::vector<RequirementStep> out;
  const auto profile_scaled = profile.scaled(requirement_scale);
  for (const auto& step : requirements) {
    RequirementStep r = step;
    if (step.framing) {
      r.mbps = rapp::requirements_from_detection(*step.framing, topology, profile_scaled);
    } else {
      for (auto& v : r.mbps) v *= requirement_scale;
    }
    for (auto& v : r.mbps) v = std::round(v * 1e9) / 1e9;
    out.push_back(std::move(r));
  }
  return out;
}

std::int64_t ExperimentSpec::total_windows() const {
  if (requirements.empty()) return run.warmup_windows + run.episode_windows;
  return requirements.back().window + run.episode_windows;
}

ExperimentSpec parse_experiment(const std::string& json_text, const std::filesystem::path& base_dir) {
  ExperimentSpec s;
  try {
    const json j = json::parse(json_text);
    reject_unknown(j,
                   {"scenario", "sim_config", "beta_grid", "q", "delta_mbps", "sweep", "run", "loop",
                    "requirement_scale", "requirements", "topology", "profile", "f1_b_values",
                    "output_dir"},
                   "experiment");
    s.scenario = j.value("scenario", "experiment");
    s.sim_config_path = base_dir / j.at("sim_config").get<std::string>();
    s.sim = ransim::load_sim_config(s.sim_config_path);
    s.beta_grid = j.at("beta_grid").get<std::vector<double>>();
    xapp::BetaGrid grid(s.beta_grid);  // validates
    read_opt(j, "q", s.q);
    read_opt(j, "delta_mbps", s.delta_mbps);
    if (!(s.q > 0.0 && s.q <= 1.0)) throw ValidationError("q must lie in (0, 1]");
    if (!(s.delta_mbps > 0.0)) throw ValidationError("delta_mbps must be positive");

    if (j.contains("sweep")) {
      const auto& w = j.at("sweep");
      reject_unknown(w, {"warmup_windows", "windows", "threads"}, "sweep");
      read_opt(w, "warmup_windows", s.sweep.warmup_windows);
      read_opt(w, "windows", s.sweep.windows);
      read_opt(w, "threads", s.sweep.threads);
    }
    if (j.contains("run")) {
      const auto& r = j.at("run");
      reject_unknown(r, {"seed", "warmup_windows", "episode_windows"}, "run");
      read_opt(r, "seed", s.run.seed);
      read_opt(r, "warmup_windows", s.run.warmup_windows);
      read_opt(r, "episode_windows", s.run.episode_windows);
    }
    if (s.run.warmup_windows < 1 || s.run.episode_windows < 2) {
      throw ValidationError("run needs warmup_windows >= 1 and episode_windows >= 2");
    }
    if (j.contains("loop")) {
      const auto& l = j.at("loop");
      reject_unknown(l, {"xapp_processing_ms", "e2_delay_ms", "selection_seed", "mode"}, "loop");
      read_opt(l, "xapp_processing_ms", s.loop.xapp_processing_ms);
      read_opt(l, "e2_delay_ms", s.loop.e2_delay_ms);
      read_opt(l, "selection_seed", s.loop.selection_seed);
      const auto mode = l.value("mode", "inprocess");
      if (mode == "inprocess") {
        s.loop.mode = LoopMode::kInProcess;
      } else if (mode == "socket") {
        s.loop.mode = LoopMode::kSocket;
      } else {
        throw ValidationError("loop.mode must be 'inprocess' or 'socket'");
      }
    }
    if (!(s.loop.xapp_processing_ms >= 0.0 && s.loop.e2_delay_ms >= 0.0)) {
      throw ValidationError("loop delays must be non-negative");
    }
    read_opt(j, "requirement_scale", s.requirement_scale);
    if (!(s.requirement_scale > 0.0)) throw ValidationError("requirement_scale must be positive");

    s.topology = rapp::default_topology();
    if (j.contains("topology")) {
      const auto& t = j.at("topology");
      s.topology = t.is_string() ? rapp::load_topology(base_dir / t.get<std::string>())
                                 : rapp::parse_topology(t.dump());
    }
    if (j.contains("profile")) {
      const auto& p = j.at("profile");
      reject_unknown(p, {"framing", "adjacent", "far"}, "profile");
      read_opt(p, "framing", s.profile.framing_mbps);
      read_opt(p, "adjacent", s.profile.adjacent_mbps);
      read_opt(p, "far", s.profile.far_mbps);
    }
    s.profile.validate();
    read_opt(j, "f1_b_values", s.f1_b_values);

    std::int64_t next = s.run.warmup_windows;
    for (const auto& r : j.value("requirements", json::array())) {
      reject_unknown(r, {"window", "mbps", "framing"}, "requirement");
      RequirementStep step;
      step.window = r.value("window", next);
      if (r.contains("mbps") == r.contains("framing")) {
        throw ValidationError("each requirement needs exactly one of 'mbps' or 'framing'");
      }
      if (r.contains("mbps")) {
        step.mbps = r.at("mbps").get<std::vector<double>>();
        if (step.mbps.size() != s.sim.n_ues) {
          throw ValidationError("requirement length differs from n_ues");
        }
        for (double v : step.mbps) {
          if (!(v >= 0.0)) throw ValidationError("requirements must be non-negative");
        }
      } else {
        step.framing = r.at("framing").get<std::string>();
        s.topology.index_of(*step.framing);
        if (s.topology.cameras.size() != s.sim.n_ues) {
          throw ValidationError("topology camera count differs from n_ues");
        }
      }
      if (!s.requirements.empty() && step.window <= s.requirements.back().window) {
        throw ValidationError("requirement windows must be strictly increasing");
      }
      if (step.window < 1) throw ValidationError("the first requirement window must be >= 1");
      next = step.window + s.run.episode_windows;
      s.requirements.push_back(std::move(step));
    }

    s.output_dir = j.value("output_dir", "out/" + s.scenario);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("experiment spec: ") + e.what());
  }
  s.sim.sim_duration_ms = static_cast<double>(s.total_windows()) * s.sim.measurement_window_ms;
  s.sim.validate();
  return s;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open experiment spec " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment(buf.str(), path.parent_path());
}

}  // namespace ranctl::harness
