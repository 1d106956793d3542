#include "fairseco/fairness.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include <fmt/format.h>

namespace fairseco {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

CheckResult result(Recommendation r, bool passed, std::vector<std::string> evidence) {
  return CheckResult{r, passed, std::move(evidence)};
}

}  // namespace

BadgePatterns default_badge_patterns() {
  return BadgePatterns{{
      "bestpractices.coreinfrastructure.org/projects/",
      "www.bestpractices.dev/projects/",
      "bestpractices.dev/projects/",
      "api.securityscorecards.dev/projects/",
      "api.scorecard.dev/projects/",
      "img.shields.io/badge/fair--software.eu",
      "fair-software.eu/badge",
  }};
}

BadgePatterns parse_badge_patterns(std::string_view text) {
  BadgePatterns out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.patterns.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

BadgePatterns load_badge_patterns(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read badge pattern file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_badge_patterns(ss.str());
}

bool is_registry_doi(std::string_view doi) {
  const auto d = normalize_doi(doi);
  // Zenodo, Figshare and Code Ocean deposits.
  return d.starts_with("10.5281/zenodo.") || d.starts_with("10.6084/m9.figshare.") ||
         d.starts_with("10.24433/co.");
}

std::vector<std::string> find_registry_dois(std::string_view text) {
  // Badge and record links: zenodo.org/badge/DOI/<doi>.svg, doi.org/<doi>, ...
  static const std::regex kDoiInText(R"((10\.(?:5281/zenodo|6084/m9\.figshare|24433/CO)\.[0-9]+))",
                                     std::regex::icase);
  std::vector<std::string> found;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kDoiInText); it != std::sregex_iterator();
       ++it) {
    const auto doi = normalize_doi((*it)[1].str());
    if (std::find(found.begin(), found.end(), doi) == found.end()) found.push_back(doi);
  }
  return found;
}

CheckResult check_r1_public(const RepositoryMetadata& metadata, const RepositoryRef& ref) {
  if (metadata.is_public)
    return result(Recommendation::R1, true,
                  {fmt::format("publicly accessible version-controlled repository at {}", ref.url())});
  return result(Recommendation::R1, false,
                {fmt::format("repository {} is not publicly accessible", ref.url())});
}

CheckResult check_r2_license(const FileInventory& inventory, const RepositoryMetadata& metadata) {
  std::vector<std::string> evidence;
  if (inventory.license_file)
    evidence.push_back("license file " + inventory.license_file->generic_string());
  if (metadata.declared_license_id)
    evidence.push_back("declared license " + *metadata.declared_license_id);
  if (evidence.empty())
    return result(Recommendation::R2, false, {"no license file and no declared license"});
  return result(Recommendation::R2, true, std::move(evidence));
}

CheckResult check_r3_registry(const FileInventory& inventory) {
  std::vector<std::string> evidence;
  if (inventory.readme_text) {
    for (const auto& doi : find_registry_dois(*inventory.readme_text))
      evidence.push_back("README links registry DOI " + doi);
  }
  if (inventory.has_zenodo_json) evidence.push_back(".zenodo.json present");
  if (inventory.citation_text) {
    try {
      const auto meta = parse_cff(*inventory.citation_text);
      if (meta.doi && is_registry_doi(*meta.doi))
        evidence.push_back("CITATION.cff registry DOI " + normalize_doi(*meta.doi));
    } catch (const ParseError&) {
      // R4 reports the parse failure.
    }
  }
  if (evidence.empty())
    return result(Recommendation::R3, false, {"no community registry entry found"});
  return result(Recommendation::R3, true, std::move(evidence));
}

CitationCheck check_r4_citation(const FileInventory& inventory) {
  if (!inventory.citation_file || !inventory.citation_text)
    return {result(Recommendation::R4, false, {"no CITATION.cff at repository root"}), std::nullopt};
  try {
    auto meta = parse_cff(*inventory.citation_text);
    auto r = result(Recommendation::R4, true,
                    {fmt::format("CITATION.cff parsed: \"{}\" ({} author(s))", meta.title,
                                 meta.authors.size())});
    return {std::move(r), std::move(meta)};
  } catch (const ParseError& e) {
    return {result(Recommendation::R4, false, {std::string("CITATION.cff invalid: ") + e.what()}),
            std::nullopt};
  }
}

CheckResult check_r5_checklist(const FileInventory& inventory, const BadgePatterns& patterns) {
  if (!inventory.readme_text || inventory.readme_text->empty())
    return result(Recommendation::R5, false, {"no README to carry a checklist badge"});
  const auto readme = lower(*inventory.readme_text);
  std::vector<std::string> evidence;
  for (const auto& p : patterns.patterns) {
    if (readme.find(lower(p)) != std::string::npos)
      evidence.push_back("README carries checklist badge matching " + p);
  }
  if (evidence.empty())
    return result(Recommendation::R5, false, {"README carries no quality-checklist badge"});
  return result(Recommendation::R5, true, std::move(evidence));
}

FairnessAssessment assess_fairness(std::span<const CheckResult> results) {
  FairnessAssessment out;
  std::array<bool, 5> seen{};
  for (const auto& r : results) {
    const int idx = static_cast<int>(r.recommendation) - 1;
    if (idx < 0 || idx > 4) throw ValidationError("unknown recommendation id");
    if (seen[idx])
      throw ValidationError(fmt::format("duplicate check result for {}", to_string(r.recommendation)));
    if (r.passed && r.evidence.empty())
      throw ValidationError(
          fmt::format("passed check {} carries no evidence", to_string(r.recommendation)));
    seen[idx] = true;
    out.checks[idx] = r;
  }
  for (int i = 0; i < 5; ++i) {
    if (!seen[i])
      throw ValidationError(fmt::format("missing check result for {}",
                                        to_string(static_cast<Recommendation>(i + 1))));
  }
  out.raw_score = static_cast<int>(
      std::count_if(out.checks.begin(), out.checks.end(), [](const auto& c) { return c.passed; }));
  out.s_fair = 20.0 * out.raw_score;
  return out;
}

}  // namespace fairseco
