// CITATION.cff reader for the required-field subset.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairseco {

struct CffAuthor {
  std::string family_names;  // for entity authors, the entity name
  std::string given_names;
  std::optional<std::string> orcid;

  bool operator==(const CffAuthor&) const = default;
};

struct CitationMetadata {
  std::string cff_version;
  std::string title;
  std::vector<CffAuthor> authors;
  std::optional<std::string> doi;
  std::optional<std::string> version;
  std::optional<std::string> date_released;  // YYYY-MM-DD

  bool operator==(const CitationMetadata&) const = default;
};

/// Throws ParseError for malformed YAML, a missing required key (named in the
/// message), an empty author list, a bad DOI or a bad date-released.
CitationMetadata parse_cff(std::string_view text);

/// Minimal CFF document that parse_cff maps back to an equal value.
std::string to_cff(const CitationMetadata& meta);

/// "10.<registrant>/<suffix>"
bool is_valid_doi(std::string_view doi);

/// Lowercases and strips "https://doi.org/", "doi:" and similar prefixes.
std::string normalize_doi(std::string_view doi);

}  // namespace fairseco
