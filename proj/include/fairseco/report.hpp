// The canonical report document and the artifacts written next to it.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairseco/cff.hpp"
#include "fairseco/citations.hpp"
#include "fairseco/license_audit.hpp"
#include "fairseco/model.hpp"
#include "fairseco/reuse_index.hpp"
#include "fairseco/serialize.hpp"

namespace fairseco {

inline constexpr std::string_view kReportSchemaVersion = "1";

namespace section_status {
inline constexpr std::string_view kAvailable = "available";
inline constexpr std::string_view kUnavailable = "unavailable";  // upstream failure
inline constexpr std::string_view kNotApplicable = "not-applicable";  // no DOI / no index
}  // namespace section_status

struct ReportDocument {
  std::string schema_version{kReportSchemaVersion};
  Timestamp generated_at{};
  // Host-independent summary: no local paths, no file contents.
  RepositorySnapshot snapshot;
  std::optional<CitationMetadata> citation_metadata;
  FairnessAssessment fairness;
  LicenseAuditResult license_audit;
  std::optional<std::string> software_doi;
  std::string citations_status{section_status::kAvailable};
  CitationSet citations;
  RadarData radar;
  std::optional<CitationRecord> highlight;
  std::string reuse_status{section_status::kAvailable};
  ReuseReport reuse;
  ScoreCard scorecard;
  std::vector<std::string> warnings;

  bool operator==(const ReportDocument&) const = default;
};

/// Everything the report is assembled from. The mandatory sections are
/// optional here only so that a missing one can be reported by name.
struct ReportInputs {
  std::optional<RepositorySnapshot> snapshot;
  std::optional<CitationMetadata> citation_metadata;
  std::optional<FairnessAssessment> fairness;
  std::optional<LicenseAuditResult> license_audit;
  std::optional<std::string> software_doi;
  std::string citations_status{section_status::kAvailable};
  CitationSet citations;
  std::string reuse_status{section_status::kAvailable};
  ReuseReport reuse;
  std::optional<ScoreCard> scorecard;
  std::vector<std::string> warnings;
  Timestamp generated_at{};
};

/// Throws ValidationError naming a missing mandatory section or a scorecard
/// whose composites do not recombine from its inputs.
ReportDocument build_report(ReportInputs inputs);

Json to_json(const ReportDocument& report);
void read_json(const Json& j, ReportDocument& report);

/// Parses a report.json document; throws ParseError.
ReportDocument parse_report(std::string_view text);

/// SBOM for the audited dependencies, subject versioned by the CFF version.
SbomDocument sbom_for(const ReportDocument& report);

/// Per-dependency license, verdict and rationale plus the audit totals.
Json license_audit_document(const ReportDocument& report);

struct ImpactHistory;

/// Self-contained HTML: seven tab sections, inline CSS and SVG only.
std::string render_html(const ReportDocument& report, const ImpactHistory* history = nullptr);

/// Writes report.json, report.html, sbom.json and license-audit.json; returns
/// the written paths. Throws Error naming the first path that failed.
std::vector<std::filesystem::path> write_artifacts(const ReportDocument& report,
                                                   const std::filesystem::path& out_dir,
                                                   const ImpactHistory* history = nullptr);

/// Writes `content` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace fairseco
