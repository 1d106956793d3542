// Citing-work harvesting from two open scholarly catalogs (OpenAlex as
// catalog A, Semantic Scholar as catalog B), deduplication and the per-field
// distribution behind the radar chart.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairseco/cff.hpp"
#include "fairseco/http.hpp"
#include "fairseco/timeutil.hpp"

namespace fairseco {

enum class Catalog { OpenAlex, SemanticScholar };

std::string_view to_string(Catalog c);
std::optional<Catalog> catalog_from_string(std::string_view s);

struct CitationRecord {
  std::string title;
  std::vector<std::string> authors;
  Catalog source_catalog = Catalog::OpenAlex;
  std::optional<std::string> publication_date;  // YYYY-MM-DD
  std::optional<std::string> doi;               // normalized
  std::optional<std::string> url;
  std::vector<std::string> fields_of_study;
  std::optional<std::uint64_t> cited_by_count;
  std::optional<std::string> venue;

  bool operator==(const CitationRecord&) const = default;
};

/// Validates the title and normalizes the DOI; throws ValidationError.
CitationRecord make_citation_record(CitationRecord record);

struct CitationSet {
  std::vector<CitationRecord> records;
  std::uint64_t n_citations = 0;  // N_c

  bool operator==(const CitationSet&) const = default;
};

struct RadarAxis {
  std::string field;
  std::uint64_t count = 0;

  bool operator==(const RadarAxis&) const = default;
};

struct RadarData {
  std::vector<RadarAxis> axes;  // count descending, then name
  std::uint64_t total = 0;

  bool operator==(const RadarData&) const = default;
};

/// CFF DOI when present, else the first registry DOI linked from the README.
std::optional<std::string> resolve_software_doi(const std::optional<CitationMetadata>& cff,
                                                const std::optional<std::string>& readme);

struct CatalogOptions {
  std::string openalex_base = "https://api.openalex.org";
  std::string semantic_scholar_base = "https://api.semanticscholar.org";
  int openalex_page_size = 200;
  int semantic_scholar_page_size = 100;
  int max_pages = 50;
};

class CatalogClient {
public:
  CatalogClient(HttpTransport& transport, CatalogOptions options, Clock clock);

  /// Every citing work the catalog reports, all pages. A DOI the catalog does
  /// not know yields an empty list. Throws FetchError on outage or rate limit.
  std::vector<CitationRecord> fetch_citing_works(std::string_view doi, Catalog catalog) const;

  std::string openalex_lookup_url(std::string_view doi) const;
  std::string openalex_citing_url(std::string_view work_id, int page) const;
  std::string semantic_scholar_citing_url(std::string_view doi, int offset) const;

private:
  std::vector<CitationRecord> fetch_openalex(std::string_view doi) const;
  std::vector<CitationRecord> fetch_semantic_scholar(std::string_view doi) const;
  std::optional<std::string> get(const std::string& url) const;

  HttpTransport& transport_;
  CatalogOptions options_;
  Clock clock_;
};

/// Union of the per-catalog lists without duplicate DOIs (or duplicate
/// case-folded titles among DOI-less records). On collision the record with
/// more populated fields wins; ties go to catalog A.
CitationSet merge_citations(std::span<const std::vector<CitationRecord>> lists);

RadarData field_distribution(const CitationSet& set);

/// Most cited record; ties broken by earliest date, then title.
std::optional<CitationRecord> highlight_paper(const CitationSet& set);

}  // namespace fairseco
