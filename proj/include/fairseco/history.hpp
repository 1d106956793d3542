// Append-only impact history kept next to the report outputs.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairseco/model.hpp"

namespace fairseco {

struct ReportDocument;

inline constexpr std::string_view kHistoryFileName = "history.json";

struct HistoryEntry {
  Timestamp timestamp{};
  double s_quality = 0.0;
  double s_fair = 0.0;
  std::uint64_t n_citations = 0;
  std::uint64_t n_reuse = 0;

  bool operator==(const HistoryEntry&) const = default;
};

struct HistoryDelta {
  Timestamp from{};
  Timestamp to{};
  double s_quality = 0.0;
  double s_fair = 0.0;
  std::int64_t n_citations = 0;
  std::int64_t n_reuse = 0;

  bool operator==(const HistoryDelta&) const = default;
};

struct ImpactHistory {
  std::vector<HistoryEntry> entries;  // strictly increasing timestamps
  std::vector<HistoryDelta> deltas;   // deltas[i] = entries[i+1] - entries[i]

  bool operator==(const ImpactHistory&) const = default;
};

/// Validates ordering and computes the deltas; throws ValidationError.
ImpactHistory make_history(std::vector<HistoryEntry> entries);

HistoryEntry history_entry_for(const ReportDocument& report);

std::string history_to_json(const ImpactHistory& history);
/// Throws ParseError for malformed or out-of-order content.
ImpactHistory parse_history(std::string_view text);

/// Absent file -> empty history. A corrupt file throws ParseError.
ImpactHistory load_history(const std::filesystem::path& file);

/// What the history would become after this report, without touching disk.
ImpactHistory preview_history(const ReportDocument& report, const std::filesystem::path& file);

/// Appends one entry under an exclusive lock and rewrites the file atomically.
/// A corrupt file or a timestamp not after the last entry is refused and the
/// file left untouched.
ImpactHistory append_history(const ReportDocument& report, const std::filesystem::path& file);

/// Fixed-width text table: latest entry plus one row per delta.
std::string format_history_table(const ImpactHistory& history);

}  // namespace fairseco
