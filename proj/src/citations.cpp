#include "fairseco/citations.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "fairseco/fairness.hpp"

namespace fairseco {

using nlohmann::json;

namespace {

std::string casefold(std::string_view s) {
  std::string out;
  bool space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::optional<std::string> opt_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) return std::nullopt;
  return it->get<std::string>();
}

std::optional<std::uint64_t> opt_count(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer() || it->get<std::int64_t>() < 0) return std::nullopt;
  return it->get<std::uint64_t>();
}

void push_unique(std::vector<std::string>& v, std::string s) {
  if (!s.empty() && std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

int populated_fields(const CitationRecord& r) {
  return !r.authors.empty() + r.publication_date.has_value() + r.doi.has_value() +
         r.url.has_value() + !r.fields_of_study.empty() + r.cited_by_count.has_value() +
         r.venue.has_value();
}

json parse_body(const std::string& body, const std::string& url) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw FetchError(FetchErrorKind::Transport, fmt::format("bad JSON from {}: {}", url, e.what()));
  }
}

}  // namespace

std::string_view to_string(Catalog c) {
  return c == Catalog::OpenAlex ? "openalex" : "semanticscholar";
}

std::optional<Catalog> catalog_from_string(std::string_view s) {
  if (s == "openalex") return Catalog::OpenAlex;
  if (s == "semanticscholar") return Catalog::SemanticScholar;
  return std::nullopt;
}

CitationRecord make_citation_record(CitationRecord record) {
  if (record.title.empty()) throw ValidationError("citation record title must be non-empty");
  if (record.doi) {
    record.doi = normalize_doi(*record.doi);
    if (record.doi->empty()) record.doi.reset();
  }
  if (record.publication_date && !is_iso_date(*record.publication_date)) {
    // Catalogs sometimes report only a year; keep what is well formed.
    record.publication_date.reset();
  }
  return record;
}

std::optional<std::string> resolve_software_doi(const std::optional<CitationMetadata>& cff,
                                                const std::optional<std::string>& readme) {
  if (cff && cff->doi) return normalize_doi(*cff->doi);
  if (readme) {
    auto dois = find_registry_dois(*readme);
    if (!dois.empty()) return dois.front();
  }
  return std::nullopt;
}

// ---- catalog client ----------------------------------------------------------

CatalogClient::CatalogClient(HttpTransport& transport, CatalogOptions options, Clock clock)
    : transport_(transport), options_(std::move(options)), clock_(std::move(clock)) {}

std::string CatalogClient::openalex_lookup_url(std::string_view doi) const {
  return fmt::format("{}/works/doi:{}", options_.openalex_base, normalize_doi(doi));
}

std::string CatalogClient::openalex_citing_url(std::string_view work_id, int page) const {
  return fmt::format("{}/works?filter=cites:{}&per-page={}&page={}", options_.openalex_base,
                     work_id, options_.openalex_page_size, page);
}

std::string CatalogClient::semantic_scholar_citing_url(std::string_view doi, int offset) const {
  return fmt::format(
      "{}/graph/v1/paper/DOI:{}/citations?fields=title,authors,externalIds,publicationDate,url,"
      "fieldsOfStudy,s2FieldsOfStudy,citationCount,venue&offset={}&limit={}",
      options_.semantic_scholar_base, normalize_doi(doi), offset,
      options_.semantic_scholar_page_size);
}

std::optional<std::string> CatalogClient::get(const std::string& url) const {
  const HttpResponse r = transport_.get(url, {{"Accept", "application/json"}});
  throw_if_rate_limited(r, url, clock_());
  if (r.status == 404) return std::nullopt;
  if (r.status != 200)
    throw FetchError(FetchErrorKind::Transport,
                     fmt::format("catalog unreachable: GET {} returned HTTP {}", url, r.status));
  return r.body;
}

std::vector<CitationRecord> CatalogClient::fetch_citing_works(std::string_view doi,
                                                              Catalog catalog) const {
  if (!is_valid_doi(normalize_doi(doi)))
    throw ValidationError(fmt::format("'{}' is not a well-formed DOI", doi));
  return catalog == Catalog::OpenAlex ? fetch_openalex(doi) : fetch_semantic_scholar(doi);
}

std::vector<CitationRecord> CatalogClient::fetch_openalex(std::string_view doi) const {
  const auto lookup_url = openalex_lookup_url(doi);
  const auto work = get(lookup_url);
  if (!work) return {};
  const auto work_doc = parse_body(*work, lookup_url);
  auto id = work_doc.value("id", std::string{});
  if (auto slash = id.rfind('/'); slash != std::string::npos) id = id.substr(slash + 1);
  if (id.empty()) throw FetchError(FetchErrorKind::Transport, "OpenAlex work without id");

  std::vector<CitationRecord> out;
  for (int page = 1; page <= options_.max_pages; ++page) {
    const auto url = openalex_citing_url(id, page);
    const auto body = get(url);
    if (!body) break;
    const auto doc = parse_body(*body, url);
    const auto results = doc.value("results", json::array());
    for (const auto& w : results) {
      CitationRecord r;
      r.source_catalog = Catalog::OpenAlex;
      r.title = opt_string(w, "display_name").value_or(opt_string(w, "title").value_or(""));
      if (r.title.empty()) continue;
      for (const auto& a : w.value("authorships", json::array())) {
        if (a.contains("author") && a["author"].is_object())
          push_unique(r.authors, a["author"].value("display_name", ""));
      }
      r.publication_date = opt_string(w, "publication_date");
      r.doi = opt_string(w, "doi");
      r.url = r.doi ? r.doi : opt_string(w, "id");
      if (auto topics = w.find("topics"); topics != w.end() && topics->is_array()) {
        for (const auto& t : *topics) {
          if (t.contains("field") && t["field"].is_object())
            push_unique(r.fields_of_study, t["field"].value("display_name", ""));
        }
      }
      if (r.fields_of_study.empty()) {
        for (const auto& c : w.value("concepts", json::array())) {
          if (c.value("level", -1) == 0) push_unique(r.fields_of_study, c.value("display_name", ""));
        }
      }
      r.cited_by_count = opt_count(w, "cited_by_count");
      if (auto loc = w.find("primary_location"); loc != w.end() && loc->is_object()) {
        if (auto src = loc->find("source"); src != loc->end() && src->is_object())
          r.venue = opt_string(*src, "display_name");
      }
      out.push_back(make_citation_record(std::move(r)));
    }
    const auto total = doc.value(json::json_pointer("/meta/count"), std::uint64_t{0});
    if (results.empty() || out.size() >= total) break;
  }
  return out;
}

std::vector<CitationRecord> CatalogClient::fetch_semantic_scholar(std::string_view doi) const {
  std::vector<CitationRecord> out;
  int offset = 0;
  for (int page = 0; page < options_.max_pages; ++page) {
    const auto url = semantic_scholar_citing_url(doi, offset);
    const auto body = get(url);
    if (!body) break;
    const auto doc = parse_body(*body, url);
    for (const auto& item : doc.value("data", json::array())) {
      const auto p = item.value("citingPaper", json::object());
      CitationRecord r;
      r.source_catalog = Catalog::SemanticScholar;
      r.title = opt_string(p, "title").value_or("");
      if (r.title.empty()) continue;
      for (const auto& a : p.value("authors", json::array())) push_unique(r.authors, a.value("name", ""));
      r.publication_date = opt_string(p, "publicationDate");
      if (auto ids = p.find("externalIds"); ids != p.end() && ids->is_object())
        r.doi = opt_string(*ids, "DOI");
      r.url = opt_string(p, "url");
      if (auto fos = p.find("fieldsOfStudy"); fos != p.end() && fos->is_array()) {
        for (const auto& f : *fos)
          if (f.is_string()) push_unique(r.fields_of_study, f.get<std::string>());
      }
      if (r.fields_of_study.empty()) {
        for (const auto& f : p.value("s2FieldsOfStudy", json::array()))
          push_unique(r.fields_of_study, f.value("category", ""));
      }
      r.cited_by_count = opt_count(p, "citationCount");
      r.venue = opt_string(p, "venue");
      out.push_back(make_citation_record(std::move(r)));
    }
    auto next = doc.find("next");
    if (next == doc.end() || !next->is_number_integer()) break;
    offset = next->get<int>();
  }
  return out;
}

// ---- post-processing ------------------------------------------------------------

CitationSet merge_citations(std::span<const std::vector<CitationRecord>> lists) {
  std::map<std::string, CitationRecord> by_key;
  for (const auto& list : lists) {
    for (const auto& raw : list) {
      auto rec = make_citation_record(raw);
      const auto key = rec.doi ? "doi:" + *rec.doi : "title:" + casefold(rec.title);
      auto [it, inserted] = by_key.try_emplace(key, rec);
      if (inserted) continue;
      const int have = populated_fields(it->second);
      const int cand = populated_fields(rec);
      const bool replace = cand > have || (cand == have && rec.source_catalog == Catalog::OpenAlex &&
                                           it->second.source_catalog != Catalog::OpenAlex);
      if (replace) it->second = std::move(rec);
    }
  }
  CitationSet set;
  for (auto& [key, rec] : by_key) set.records.push_back(std::move(rec));
  std::stable_sort(set.records.begin(), set.records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.publication_date, a.title) > std::tie(b.publication_date, b.title);
  });
  set.n_citations = set.records.size();
  return set;
}

RadarData field_distribution(const CitationSet& set) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& r : set.records) {
    std::set<std::string> distinct(r.fields_of_study.begin(), r.fields_of_study.end());
    for (const auto& f : distinct) ++counts[f];
  }
  RadarData radar;
  for (const auto& [field, count] : counts) radar.axes.push_back({field, count});
  std::sort(radar.axes.begin(), radar.axes.end(), [](const RadarAxis& a, const RadarAxis& b) {
    return a.count != b.count ? a.count > b.count : a.field < b.field;
  });
  radar.total = set.records.size();
  return radar;
}

std::optional<CitationRecord> highlight_paper(const CitationSet& set) {
  const CitationRecord* best = nullptr;
  const auto better = [](const CitationRecord& a, const CitationRecord& b) {
    const auto ca = a.cited_by_count.value_or(0), cb = b.cited_by_count.value_or(0);
    if (ca != cb) return ca > cb;
    if (a.publication_date != b.publication_date) {
      if (!a.publication_date) return false;
      if (!b.publication_date) return true;
      return *a.publication_date < *b.publication_date;
    }
    return a.title < b.title;
  };
  for (const auto& r : set.records)
    if (!best || better(r, *best)) best = &r;
  if (!best) return std::nullopt;
  return *best;
}

}  // namespace fairseco
