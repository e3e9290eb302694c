#include "ranctl/ransim/sim_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "ranctl/error.hpp"
#include "ranctl/format.hpp"
#include "ranctl/sched/scheduler.hpp"

namespace ranctl::ransim {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    out.push_back(trim(std::string_view(value).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ValidationError("config key '" + key + "': not a number: '" + v + "'");
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ValidationError("config key '" + key + "': not a non-negative integer: '" + v + "'");
  }
  return out;
}

const char* to_string(TrafficMode m) { return m == TrafficMode::kCbr ? "cbr" : "saturated"; }
const char* to_string(ChannelModel m) {
  return m == ChannelModel::kStatic ? "static" : "lognormal";
}
const char* to_string(ThetaMode m) {
  return m == ThetaMode::kAchievable ? "achievable" : "requested";
}

TrafficMode parse_traffic(const std::string& v) {
  if (v == "cbr") return TrafficMode::kCbr;
  if (v == "saturated") return TrafficMode::kSaturated;
  throw ValidationError("traffic must be 'cbr' or 'saturated', got '" + v + "'");
}

ChannelModel parse_channel(const std::string& v) {
  if (v == "static") return ChannelModel::kStatic;
  if (v == "lognormal") return ChannelModel::kLognormal;
  throw ValidationError("channel must be 'static' or 'lognormal', got '" + v + "'");
}

bool is_integer_multiple(double value, double step) {
  const double ratio = value / step;
  return std::abs(ratio - std::round(ratio)) < 1e-9 && std::round(ratio) >= 1.0;
}

}  // namespace

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) throw ValidationError("line " + std::to_string(line_no) + ": empty key");
    if (!out.emplace(key, value).second) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

void SimConfig::validate() const {
  if (n_ues < 1) throw ValidationError("n_ues must be >= 1");
  if (n_rbs_per_tti < 1) throw ValidationError("n_rbs must be >= 1");
  if (!(tti_ms > 0.0)) throw ValidationError("tti_ms must be positive");
  if (!is_integer_multiple(measurement_window_ms, tti_ms)) {
    throw ValidationError("window_ms must be a positive integer multiple of tti_ms");
  }
  if (!(sim_duration_ms >= measurement_window_ms)) {
    throw ValidationError("duration_ms must be >= window_ms");
  }
  if (ues.size() != n_ues) {
    throw ValidationError("expected " + std::to_string(n_ues) + " UE profiles, got " +
                          std::to_string(ues.size()));
  }
  sched::SchedulerParams{alpha, betas_or_default(), d_init}.validate(n_ues);
  for (std::size_t i = 0; i < ues.size(); ++i) {
    const auto& ue = ues[i];
    const std::string who = "ue " + std::to_string(i) + ": ";
    if (ue.bits_per_rb < 1) throw ValidationError(who + "bits_per_rb must be >= 1");
    if (ue.packet_bits < 1) throw ValidationError(who + "packet_bits must be >= 1");
    if (ue.traffic == TrafficMode::kCbr && !(ue.rate_mbps > 0.0)) {
      throw ValidationError(who + "cbr rate_mbps must be positive");
    }
    if (!(ue.channel_sigma >= 0.0)) throw ValidationError(who + "channel_sigma must be >= 0");
    if (theta_mode == ThetaMode::kRequested && !(ue.requested_rate_mbps > 0.0)) {
      throw ValidationError(who + "requested_rate_mbps must be positive");
    }
  }
}

std::int64_t SimConfig::ttis_per_window() const {
  return static_cast<std::int64_t>(std::llround(measurement_window_ms / tti_ms));
}

std::int64_t SimConfig::total_ttis() const {
  return static_cast<std::int64_t>(std::floor(sim_duration_ms / tti_ms + 1e-9));
}

std::vector<double> SimConfig::betas_or_default() const {
  return initial_betas.empty() ? std::vector<double>(n_ues, 1.0) : initial_betas;
}

namespace {

template <class T, class F>
std::string per_ue(const std::vector<UeProfile>& ues, F field) {
  std::string out;
  for (std::size_t i = 0; i < ues.size(); ++i) {
    if (i) out += ",";
    const T v = field(ues[i]);
    if constexpr (std::is_same_v<T, std::string>) {
      out += v;
    } else if constexpr (std::is_floating_point_v<T>) {
      out += format_double(v);
    } else {
      out += std::to_string(v);
    }
  }
  return out;
}

std::string capacity_text(const SimConfig& c) {
  std::string out;
  auto line = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  line("n_ues", std::to_string(c.n_ues));
  line("tti_ms", format_double(c.tti_ms));
  line("n_rbs", std::to_string(c.n_rbs_per_tti));
  line("window_ms", format_double(c.measurement_window_ms));
  line("alpha", format_double(c.alpha));
  line("d_init", format_double(c.d_init));
  line("theta_mode", to_string(c.theta_mode));
  const auto betas = c.betas_or_default();
  line("betas", join_doubles(betas, ','));
  line("traffic", per_ue<std::string>(c.ues, [](const UeProfile& u) {
         return std::string(to_string(u.traffic));
       }));
  line("rate_mbps", per_ue<double>(c.ues, [](const UeProfile& u) { return u.rate_mbps; }));
  line("packet_bits",
       per_ue<std::uint32_t>(c.ues, [](const UeProfile& u) { return u.packet_bits; }));
  line("bits_per_rb",
       per_ue<std::uint32_t>(c.ues, [](const UeProfile& u) { return u.bits_per_rb; }));
  line("channel", per_ue<std::string>(c.ues, [](const UeProfile& u) {
         return std::string(to_string(u.channel));
       }));
  line("channel_sigma",
       per_ue<double>(c.ues, [](const UeProfile& u) { return u.channel_sigma; }));
  line("requested_rate_mbps",
       per_ue<double>(c.ues, [](const UeProfile& u) { return u.requested_rate_mbps; }));
  return out;
}

}  // namespace

std::string SimConfig::to_kv_text() const {
  std::string out = capacity_text(*this);
  out += "duration_ms = " + format_double(sim_duration_ms) + "\n";
  out += "seed = " + std::to_string(rng_seed) + "\n";
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kDigits[h & 0xF];
  return out;
}

std::uint64_t SimConfig::capacity_hash() const { return fnv1a64(capacity_text(*this)); }

SimConfig parse_sim_config(const std::string& text) {
  auto kv = parse_kv(text);
  std::set<std::string> used;
  auto take = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    used.insert(key);
    return &it->second;
  };

  SimConfig c;
  const std::string* n = take("n_ues");
  if (!n) throw ValidationError("config: n_ues is required");
  c.n_ues = static_cast<std::uint32_t>(to_uint("n_ues", *n));
  if (c.n_ues < 1) throw ValidationError("n_ues must be >= 1");
  c.ues.assign(c.n_ues, UeProfile{});

  if (auto v = take("tti_ms")) c.tti_ms = to_double("tti_ms", *v);
  if (auto v = take("n_rbs")) c.n_rbs_per_tti = static_cast<std::uint32_t>(to_uint("n_rbs", *v));
  if (auto v = take("window_ms")) c.measurement_window_ms = to_double("window_ms", *v);
  if (auto v = take("duration_ms")) c.sim_duration_ms = to_double("duration_ms", *v);
  if (auto v = take("seed")) c.rng_seed = to_uint("seed", *v);
  if (auto v = take("alpha")) c.alpha = to_double("alpha", *v);
  if (auto v = take("d_init")) c.d_init = to_double("d_init", *v);
  if (auto v = take("theta_mode")) {
    if (*v == "achievable") {
      c.theta_mode = ThetaMode::kAchievable;
    } else if (*v == "requested") {
      c.theta_mode = ThetaMode::kRequested;
    } else {
      throw ValidationError("theta_mode must be 'achievable' or 'requested'");
    }
  }

  auto per_ue_values = [&](const std::string& key) -> std::vector<std::string> {
    const std::string* v = take(key);
    if (!v) return {};
    auto items = split_list(*v);
    if (items.size() == 1) return std::vector<std::string>(c.n_ues, items[0]);
    if (items.size() != c.n_ues) {
      throw ValidationError("config key '" + key + "': expected 1 or " +
                            std::to_string(c.n_ues) + " values, got " +
                            std::to_string(items.size()));
    }
    return items;
  };
  auto apply = [&](const std::string& key, const std::function<void(UeProfile&, const std::string&)>& f) {
    const auto values = per_ue_values(key);
    for (std::size_t i = 0; i < values.size(); ++i) f(c.ues[i], values[i]);
  };

  apply("traffic", [](UeProfile& u, const std::string& v) { u.traffic = parse_traffic(v); });
  apply("rate_mbps",
        [](UeProfile& u, const std::string& v) { u.rate_mbps = to_double("rate_mbps", v); });
  apply("packet_bits", [](UeProfile& u, const std::string& v) {
    u.packet_bits = static_cast<std::uint32_t>(to_uint("packet_bits", v));
  });
  apply("bits_per_rb", [](UeProfile& u, const std::string& v) {
    u.bits_per_rb = static_cast<std::uint32_t>(to_uint("bits_per_rb", v));
  });
  apply("channel", [](UeProfile& u, const std::string& v) { u.channel = parse_channel(v); });
  apply("channel_sigma", [](UeProfile& u, const std::string& v) {
    u.channel_sigma = to_double("channel_sigma", v);
  });
  apply("requested_rate_mbps", [](UeProfile& u, const std::string& v) {
    u.requested_rate_mbps = to_double("requested_rate_mbps", v);
  });
  {
    const auto betas = per_ue_values("betas");
    for (const auto& b : betas) c.initial_betas.push_back(to_double("betas", b));
  }

  for (const auto& [key, value] : kv) {
    if (!used.count(key)) throw ValidationError("config: unknown key '" + key + "'");
  }
  c.validate();
  return c;
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open sim config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sim_config(buf.str());
}

}  // namespace ranctl::ransim
