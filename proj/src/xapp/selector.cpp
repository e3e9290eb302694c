#include "ranctl/xapp/selector.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "json.hpp"
#include "ranctl/error.hpp"
#include "ranctl/format.hpp"

namespace ranctl::xapp {

namespace {

constexpr double kKeyTolerance = 1e-9;

bool key_meets(const std::vector<double>& key, const std::vector<double>& req) {
  for (std::size_t i = 0; i < req.size(); ++i) {
    if (key[i] < req[i] - kKeyTolerance) return false;
  }
  return true;
}

}  // namespace

bool satisfies_equality_rule(const std::vector<double>& req, const BetaVector& betas) {
  for (std::size_t i = 0; i < req.size(); ++i) {
    for (std::size_t j = i + 1; j < req.size(); ++j) {
      if (req[i] == req[j] && betas[i] != betas[j]) return false;
    }
  }
  return true;
}

bool satisfies_ordering_rule(const std::vector<double>& req, const BetaVector& betas) {
  for (std::size_t i = 0; i < req.size(); ++i) {
    for (std::size_t j = 0; j < req.size(); ++j) {
      if (req[i] < req[j] && betas[i] < betas[j]) return false;
    }
  }
  return true;
}

QueryResult select_betas(const PolicyTable& table, const RequirementQuery& query) {
  const auto& req = query.min_mbps;
  if (req.size() != table.meta.n_ues) {
    throw ValidationError("requirement has " + std::to_string(req.size()) + " entries, table has " +
                          std::to_string(table.meta.n_ues) + " UEs");
  }
  for (double r : req) {
    if (!(r >= 0.0)) throw ValidationError("requirements must be non-negative numbers");
  }

  std::set<BetaVector> dominating;
  std::vector<std::size_t> per_coord(req.size(), 0);
  for (const auto& [key, betas] : table.entries) {
    const auto kv = table.key_values(key);
    for (std::size_t i = 0; i < req.size(); ++i) {
      if (kv[i] >= req[i] - kKeyTolerance) ++per_coord[i];
    }
    if (key_meets(kv, req)) dominating.insert(betas.begin(), betas.end());
  }

  const std::string req_text = "(" + join_doubles(req, ',') + ") Mbit/s";
  if (dominating.empty()) {
    const auto tight = static_cast<std::size_t>(
        std::min_element(per_coord.begin(), per_coord.end()) - per_coord.begin());
    throw InfeasibleRequirement(
        tight, "no table entry dominates " + req_text + "; tightest is UE " +
                   std::to_string(tight) + " at " + format_double(req[tight]) + " Mbit/s");
  }

  std::vector<BetaVector> survivors;
  for (const auto& b : dominating) {
    if (satisfies_equality_rule(req, b) && satisfies_ordering_rule(req, b)) survivors.push_back(b);
  }
  if (survivors.empty()) {
    const auto tight = static_cast<std::size_t>(
        std::max_element(req.begin(), req.end()) - req.begin());
    throw InfeasibleRequirement(tight, std::to_string(dominating.size()) +
                                           " beta vectors reach " + req_text +
                                           " but none respects the requirement ordering");
  }

  std::mt19937_64 rng(query.rng_seed);
  QueryResult out;
  out.requirement = req;
  out.betas = survivors[rng() % survivors.size()];
  out.dominating = dominating.size();
  out.survivors = survivors.size();
  out.seed = query.rng_seed;
  return out;
}

std::string query_result_to_json(const QueryResult& r) {
  nlohmann::ordered_json j;
  j["requirement_mbps"] = r.requirement;
  j["betas"] = r.betas;
  j["dominating"] = r.dominating;
  j["survivors"] = r.survivors;
  j["seed"] = r.seed;
  return j.dump();
}

}  // namespace ranctl::xapp
