#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ranctl/xapp/policy_table.hpp"

namespace ranctl::xapp {

struct RequirementQuery {
  std::vector<double> min_mbps;
  std::uint64_t rng_seed = 0;
};

struct QueryResult {
  std::vector<double> requirement;
  BetaVector betas;
  std::size_t dominating = 0;  // distinct beta vectors after the key filter
  std::size_t survivors = 0;   // after both ordering filters
  std::uint64_t seed = 0;
};

class InfeasibleRequirement : public std::runtime_error {
 public:
  InfeasibleRequirement(std::size_t coordinate, const std::string& what)
      : std::runtime_error(what), coordinate_(coordinate) {}
  /// The UE whose requirement the fewest table keys can meet.
  std::size_t coordinate() const { return coordinate_; }

 private:
  std::size_t coordinate_;
};

/// Equal requirements must map to equal betas.
bool satisfies_equality_rule(const std::vector<double>& req, const BetaVector& betas);
/// Strictly larger requirement must never get a larger beta (ties exempt).
bool satisfies_ordering_rule(const std::vector<double>& req, const BetaVector& betas);

/// Key filter, then the two ordering filters, then a seeded uniform pick.
QueryResult select_betas(const PolicyTable& table, const RequirementQuery& query);

std::string query_result_to_json(const QueryResult& result);

}  // namespace ranctl::xapp
