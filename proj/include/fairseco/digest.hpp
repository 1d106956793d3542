#pragma once

#include <string>
#include <string_view>

namespace fairseco {

/// Lowercase hex SHA-256 of the given bytes (64 chars).
std::string sha256_hex(std::string_view bytes);

}  // namespace fairseco
