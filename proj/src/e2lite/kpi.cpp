#include "ranctl/e2lite/kpi.hpp"

#include "ranctl/error.hpp"

namespace ranctl::e2lite {

LoopKpis measure_kpis(const EpisodeLog& log) {
  if (!log.applied_at_ms) throw ContractViolation("measure_kpis: control was never applied");
  const double applied = *log.applied_at_ms;
  if (log.decision_at_ms < log.requirement_at_ms || applied < log.decision_at_ms) {
    throw ContractViolation("measure_kpis: episode timestamps out of order");
  }
  LoopKpis k;
  k.xapp_processing_ms = log.decision_at_ms - log.requirement_at_ms;
  k.control_loop_ms = applied - log.requirement_at_ms;
  for (const auto& s : log.samples) {
    if (s.time_ms > applied && s.satisfied) {
      k.control_latency_ms = s.time_ms - log.requirement_at_ms;
      break;
    }
  }
  return k;
}

}  // namespace ranctl::e2lite
