// Reader for the TOML subset used by pyproject.toml, Cargo.toml, Cargo.lock
// and poetry.lock: tables, arrays of tables, dotted keys, strings (all four
// forms), numbers, booleans, arrays and inline tables. Date-times are kept as
// strings.

#pragma once

#include <string_view>

#include <json.hpp>

namespace fairseco {

/// Throws ParseError with a line number on malformed input.
nlohmann::json parse_toml(std::string_view text);

}  // namespace fairseco
