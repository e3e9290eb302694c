#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "ranctl/e2lite/messages.hpp"

namespace ranctl::e2lite {

inline constexpr int kFrameVersion = 1;

using Frame = std::variant<IndicationMessage, ControlMessage, ControlAck>;

/// One JSON object per line, terminated by '\n':
///   {"v":1,"type":"indication","seq":..,"timestamp_ms":..,"window_index":..,
///    "samples":[{"ue":0,"mbps":..},...]}
///   {"v":1,"type":"control","seq":..,"issued_at_ms":..,"betas":[..]}
///   {"v":1,"type":"ack","seq":..,"applied_at_ms":..}
std::string encode_frame(const Frame& frame);

/// Throws ValidationError on malformed JSON, a missing field, an unknown type
/// or a version other than kFrameVersion.
Frame decode_frame(std::string_view line);

}  // namespace ranctl::e2lite
