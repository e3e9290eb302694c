#pragma once

#include <optional>
#include <vector>

#include "ranctl/e2lite/messages.hpp"

namespace ranctl::e2lite {

struct KpiSample {
  double time_ms = 0.0;  // end of the measurement interval
  bool satisfied = false;
};

/// One requirement -> decision -> application -> satisfaction episode.
struct EpisodeLog {
  double requirement_at_ms = 0.0;
  double decision_at_ms = 0.0;
  std::optional<double> applied_at_ms;
  std::vector<KpiSample> samples;  // increasing time
};

/// xApp processing = decision - requirement; control loop = applied -
/// requirement; control latency = end of the first satisfying sample collected
/// after application - requirement. Throws ContractViolation if the control
/// was never applied or timestamps run backwards.
LoopKpis measure_kpis(const EpisodeLog& log);

}  // namespace ranctl::e2lite
