#include "ranctl/ransim/csv.hpp"

#include <istream>
#include <sstream>
#include <string>

#include "ranctl/error.hpp"
#include "ranctl/format.hpp"

namespace ranctl::ransim {

void write_throughput_header(std::ostream& out) { out << "window,ue,value_mbps\n"; }

void write_throughput_rows(std::ostream& out, std::span<const ThroughputSample> samples) {
  for (const auto& s : samples) {
    out << s.window_index << ',' << s.ue << ',' << format_double(s.value_mbps) << '\n';
  }
}

void write_state_header(std::ostream& out) { out << "tti,ue,gamma,d,rbs,bits\n"; }

void write_state_rows(std::ostream& out, const TtiReport& report) {
  for (std::size_t i = 0; i < report.ues.size(); ++i) {
    const auto& u = report.ues[i];
    out << report.tti << ',' << i << ',' << format_double(u.gamma) << ',' << format_double(u.d)
        << ',' << u.rbs_allocated << ',' << u.bits_served << '\n';
  }
}

std::vector<ThroughputSample> read_throughput_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "window,ue,value_mbps") {
    throw ValidationError("throughput csv: expected header 'window,ue,value_mbps'");
  }
  std::vector<ThroughputSample> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    ThroughputSample s;
    char c1 = 0, c2 = 0;
    if (!(fields >> s.window_index >> c1 >> s.ue >> c2 >> s.value_mbps) || c1 != ',' ||
        c2 != ',') {
      throw ValidationError("throughput csv line " + std::to_string(line_no) + ": malformed");
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace ranctl::ransim
