#pragma once

#include <ostream>
#include <span>

#include "ranctl/ransim/simulator.hpp"

namespace ranctl::ransim {

/// Header `window,ue,value_mbps`.
void write_throughput_header(std::ostream& out);
void write_throughput_rows(std::ostream& out, std::span<const ThroughputSample> samples);

/// Header `tti,ue,gamma,d,rbs,bits`.
void write_state_header(std::ostream& out);
void write_state_rows(std::ostream& out, const TtiReport& report);

/// Parses a `window,ue,value_mbps` file back into samples.
std::vector<ThroughputSample> read_throughput_csv(std::istream& in);

}  // namespace ranctl::ransim
