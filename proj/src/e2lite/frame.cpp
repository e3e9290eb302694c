#include "ranctl/e2lite/frame.hpp"

#include "json.hpp"
#include "ranctl/error.hpp"

namespace ranctl::e2lite {

namespace {

using nlohmann::ordered_json;

ordered_json header(const char* type, std::int64_t seq) {
  ordered_json j;
  j["v"] = kFrameVersion;
  j["type"] = type;
  j["seq"] = seq;
  return j;
}

}  // namespace

std::string encode_frame(const Frame& frame) {
  ordered_json j;
  if (const auto* ind = std::get_if<IndicationMessage>(&frame)) {
    j = header("indication", ind->seq);
    j["timestamp_ms"] = ind->timestamp_ms;
    j["window_index"] = ind->window_index;
    auto samples = ordered_json::array();
    for (const auto& s : ind->samples) samples.push_back({{"ue", s.ue}, {"mbps", s.mbps}});
    j["samples"] = std::move(samples);
  } else if (const auto* ctl = std::get_if<ControlMessage>(&frame)) {
    j = header("control", ctl->seq);
    j["issued_at_ms"] = ctl->issued_at_ms;
    j["betas"] = ctl->betas;
  } else {
    const auto& ack = std::get<ControlAck>(frame);
    j = header("ack", ack.seq);
    j["applied_at_ms"] = ack.applied_at_ms;
  }
  return j.dump() + "\n";
}

Frame decode_frame(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    if (j.at("v").get<int>() != kFrameVersion) {
      throw ValidationError("unsupported frame version " + j.at("v").dump());
    }
    const auto type = j.at("type").get<std::string>();
    const auto seq = j.at("seq").get<std::int64_t>();
    if (type == "indication") {
      IndicationMessage m{seq, j.at("timestamp_ms").get<double>(),
                          j.at("window_index").get<std::int64_t>(), {}};
      for (const auto& s : j.at("samples")) {
        m.samples.push_back({s.at("ue").get<UeId>(), s.at("mbps").get<double>()});
      }
      return m;
    }
    if (type == "control") {
      return ControlMessage{seq, j.at("issued_at_ms").get<double>(),
                            j.at("betas").get<std::vector<double>>()};
    }
    if (type == "ack") return ControlAck{seq, j.at("applied_at_ms").get<double>()};
    throw ValidationError("unknown frame type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed frame: ") + e.what());
  }
}

}  // namespace ranctl::e2lite
