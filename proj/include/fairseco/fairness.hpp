// The five FAIR-software recommendation checks and their 0-5 tally.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairseco/cff.hpp"
#include "fairseco/model.hpp"

namespace fairseco {

/// URL substrings identifying a quality-checklist badge in a README.
struct BadgePatterns {
  std::vector<std::string> patterns;
};

BadgePatterns default_badge_patterns();
/// One substring per line; blank lines and '#' comments ignored.
BadgePatterns parse_badge_patterns(std::string_view text);
BadgePatterns load_badge_patterns(const std::filesystem::path& file);

/// DOIs of the form 10.5281/zenodo.N (and other registry deposits) linked from text.
std::vector<std::string> find_registry_dois(std::string_view text);
bool is_registry_doi(std::string_view doi);

CheckResult check_r1_public(const RepositoryMetadata& metadata, const RepositoryRef& ref);
CheckResult check_r2_license(const FileInventory& inventory, const RepositoryMetadata& metadata);
CheckResult check_r3_registry(const FileInventory& inventory);

struct CitationCheck {
  CheckResult result;
  std::optional<CitationMetadata> metadata;
};
CitationCheck check_r4_citation(const FileInventory& inventory);

CheckResult check_r5_checklist(const FileInventory& inventory, const BadgePatterns& patterns);

/// Requires exactly one result per recommendation, in any order.
FairnessAssessment assess_fairness(std::span<const CheckResult> results);

}  // namespace fairseco
