#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "fairseco/model.hpp"

namespace fairseco {

using Clock = std::function<Timestamp()>;

/// Wall clock, unless SOURCE_DATE_EPOCH is set, in which case that instant.
Clock default_clock();
Clock fixed_clock(Timestamp at);

/// "2023-06-01T12:00:00Z"
std::string format_utc(Timestamp t);
/// Accepts "YYYY-MM-DDTHH:MM:SSZ" and "YYYY-MM-DD" (midnight).
std::optional<Timestamp> parse_utc(std::string_view text);

/// True for a well-formed calendar date "YYYY-MM-DD".
bool is_iso_date(std::string_view text);

}  // namespace fairseco
