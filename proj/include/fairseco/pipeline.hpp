// End-to-end orchestration behind the CLI subcommands.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairseco/citations.hpp"
#include "fairseco/history.hpp"
#include "fairseco/http.hpp"
#include "fairseco/model.hpp"
#include "fairseco/repo_ingest.hpp"
#include "fairseco/report.hpp"
#include "fairseco/reuse_index.hpp"
#include "fairseco/timeutil.hpp"

namespace fairseco {

struct RunConfig {
  std::string target;               // repository URL, "owner/name" or local checkout
  std::optional<std::string> slug;  // forge coordinates for a local checkout
  std::filesystem::path out_dir = "fairseco-out";
  std::optional<std::filesystem::path> weights_file;
  std::optional<std::filesystem::path> matrix_file;
  std::optional<std::filesystem::path> license_db_file;
  std::optional<std::filesystem::path> index_file;
  std::optional<std::filesystem::path> badge_patterns_file;
  bool offline = false;
  std::optional<std::filesystem::path> cache_dir;

  ForgeClientOptions forge;
  CatalogOptions catalogs;
  Clock clock = default_clock();
  // Replaces the live network transport (tests, fault injection). Not owned.
  HttpTransport* upstream = nullptr;
};

/// Throws ValidationError: offline without a cache, empty target or output dir.
void validate_config(const RunConfig& config);

/// Flat "key = number" lines, '#' comments. Keys: w_fair, w_license,
/// w_maintainability, w_documentation, w_citations, w_reuse, w_quality,
/// impact_count_cap. Missing keys keep their defaults.
ScoreWeights parse_weights_config(std::string_view text);
ScoreWeights load_weights_config(const std::filesystem::path& file);

/// FAIRSECO_DATA_DIR if set, else the data directory the build was configured with.
std::filesystem::path data_file(std::string_view name);

/// Best-effort SPDX id from the text of a LICENSE/COPYING file.
std::optional<std::string> detect_license_id(std::string_view license_text);

struct AnalyzeResult {
  ReportDocument report;
  ImpactHistory history;
  std::vector<std::filesystem::path> written;
};

/// Ingest, checks, audit, citations, reuse, scoring, report. Citation outages
/// degrade to an unavailable section; everything else that fails is fatal
/// (thrown) and leaves no report.json behind.
AnalyzeResult run_analyze(const RunConfig& config);

/// Indexes every project directory under `corpus_dir` and writes the JSON-lines index.
IndexBuild run_build_index(const std::filesystem::path& corpus_dir, const std::filesystem::path& index_file);

/// Formatted history table for the history file in `out_dir`. Throws when absent.
std::string run_history(const std::filesystem::path& out_dir);

}  // namespace fairseco
