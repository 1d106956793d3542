#include "fairseco/serialize.hpp"

#include <fmt/format.h>

#include "fairseco/timeutil.hpp"

namespace fairseco {

namespace {

const Json& at(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(fmt::format("expected an object holding '{}'", key));
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(fmt::format("missing key '{}'", key));
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  const Json& v = at(j, key);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("key '{}': {}", key, e.what()));
  }
}

std::uint64_t get_count(const Json& j, const char* key) {
  const Json& v = at(j, key);
  if (!v.is_number_unsigned()) throw ParseError(fmt::format("key '{}' must be a non-negative integer", key));
  return v.get<std::uint64_t>();
}

template <class T>
std::optional<T> get_opt(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return get<T>(j, key);
}

std::optional<std::uint64_t> get_opt_count(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return get_count(j, key);
}

Timestamp get_time(const Json& j, const char* key) {
  auto text = get<std::string>(j, key);
  auto t = parse_utc(text);
  if (!t) throw ParseError(fmt::format("key '{}': bad timestamp '{}'", key, text));
  return *t;
}

std::optional<std::filesystem::path> get_opt_path(const Json& j, const char* key) {
  auto s = get_opt<std::string>(j, key);
  if (!s) return std::nullopt;
  return std::filesystem::path(*s);
}

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json opt(const std::optional<std::filesystem::path>& v) {
  return v ? Json(v->generic_string()) : Json(nullptr);
}

template <class T>
Json list(const std::vector<T>& items) {
  Json a = Json::array();
  for (const auto& item : items) a.push_back(to_json(item));
  return a;
}

template <class T>
std::vector<T> get_list(const Json& j, const char* key) {
  const Json& a = at(j, key);
  if (!a.is_array()) throw ParseError(fmt::format("key '{}' must be an array", key));
  std::vector<T> out;
  for (const auto& item : a) out.push_back(from_json<T>(item));
  return out;
}

}  // namespace

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

// ---- core -------------------------------------------------------------------

Json to_json(const RepositoryRef& v) {
  Json j;
  j["forge_host"] = v.forge_host;
  j["owner"] = v.owner;
  j["name"] = v.name;
  j["local_path"] = opt(v.local_path);
  return j;
}

void read_json(const Json& j, RepositoryRef& v) {
  v.forge_host = get<std::string>(j, "forge_host");
  v.owner = get<std::string>(j, "owner");
  v.name = get<std::string>(j, "name");
  v.local_path = get_opt_path(j, "local_path");
}

Json to_json(const RepositoryMetadata& v) {
  Json j;
  j["title"] = v.title;
  j["owner"] = v.owner;
  j["stars"] = v.stars;
  j["watchers"] = v.watchers;
  j["forks"] = v.forks;
  j["default_branch"] = v.default_branch;
  j["declared_license_id"] = opt(v.declared_license_id);
  j["is_public"] = v.is_public;
  j["assessed_at"] = format_utc(v.assessed_at);
  return j;
}

void read_json(const Json& j, RepositoryMetadata& v) {
  v.title = get<std::string>(j, "title");
  v.owner = get<std::string>(j, "owner");
  v.stars = get_count(j, "stars");
  v.watchers = get_count(j, "watchers");
  v.forks = get_count(j, "forks");
  v.default_branch = get<std::string>(j, "default_branch");
  v.declared_license_id = get_opt<std::string>(j, "declared_license_id");
  v.is_public = get<bool>(j, "is_public");
  v.assessed_at = get_time(j, "assessed_at");
}

Json to_json(const IssueStats& v) {
  Json j;
  j["total"] = v.total;
  j["closed"] = v.closed;
  return j;
}

void read_json(const Json& j, IssueStats& v) {
  try {
    v = make_issue_stats(get_count(j, "total"), get_count(j, "closed"));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const FileInventory& v) {
  Json j;
  j["root"] = v.root.generic_string();
  j["has_readme"] = v.has_readme;
  j["readme_file"] = opt(v.readme_file);
  j["readme_text"] = opt(v.readme_text);
  j["has_docs_dir"] = v.has_docs_dir;
  j["license_file"] = opt(v.license_file);
  j["citation_file"] = opt(v.citation_file);
  j["citation_text"] = opt(v.citation_text);
  j["has_zenodo_json"] = v.has_zenodo_json;
  Json manifests = Json::array();
  for (const auto& m : v.manifest_files) manifests.push_back(m.generic_string());
  j["manifest_files"] = manifests;
  Json sources = Json::array();
  for (const auto& s : v.source_files) {
    Json e;
    e["path"] = s.path.generic_string();
    e["language"] = s.language;
    sources.push_back(e);
  }
  j["source_files"] = sources;
  return j;
}

void read_json(const Json& j, FileInventory& v) {
  v.root = get<std::string>(j, "root");
  v.has_readme = get<bool>(j, "has_readme");
  v.readme_file = get_opt_path(j, "readme_file");
  v.readme_text = get_opt<std::string>(j, "readme_text");
  v.has_docs_dir = get<bool>(j, "has_docs_dir");
  v.license_file = get_opt_path(j, "license_file");
  v.citation_file = get_opt_path(j, "citation_file");
  v.citation_text = get_opt<std::string>(j, "citation_text");
  v.has_zenodo_json = get<bool>(j, "has_zenodo_json");
  v.manifest_files.clear();
  for (const auto& m : get<std::vector<std::string>>(j, "manifest_files")) v.manifest_files.emplace_back(m);
  v.source_files.clear();
  const Json& sources = at(j, "source_files");
  if (!sources.is_array()) throw ParseError("key 'source_files' must be an array");
  for (const auto& s : sources)
    v.source_files.push_back({get<std::string>(s, "path"), get<std::string>(s, "language")});
}

Json to_json(const RepositorySnapshot& v) {
  Json j;
  j["ref"] = to_json(v.ref);
  j["metadata"] = to_json(v.metadata);
  j["issues"] = to_json(v.issues);
  j["inventory"] = to_json(v.inventory);
  return j;
}

void read_json(const Json& j, RepositorySnapshot& v) {
  read_json(at(j, "ref"), v.ref);
  read_json(at(j, "metadata"), v.metadata);
  read_json(at(j, "issues"), v.issues);
  read_json(at(j, "inventory"), v.inventory);
}

Json to_json(const CheckResult& v) {
  Json j;
  j["recommendation"] = std::string(to_string(v.recommendation));
  j["passed"] = v.passed;
  j["evidence"] = v.evidence;
  return j;
}

void read_json(const Json& j, CheckResult& v) {
  auto id = get<std::string>(j, "recommendation");
  auto r = recommendation_from_string(id);
  if (!r) throw ParseError(fmt::format("unknown recommendation '{}'", id));
  v.recommendation = *r;
  v.passed = get<bool>(j, "passed");
  v.evidence = get<std::vector<std::string>>(j, "evidence");
}

Json to_json(const FairnessAssessment& v) {
  Json j;
  Json checks = Json::array();
  for (const auto& c : v.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  j["raw_score"] = v.raw_score;
  j["s_fair"] = v.s_fair;
  return j;
}

void read_json(const Json& j, FairnessAssessment& v) {
  auto checks = get_list<CheckResult>(j, "checks");
  if (checks.size() != v.checks.size()) throw ParseError("fairness assessment needs exactly five checks");
  std::copy(checks.begin(), checks.end(), v.checks.begin());
  v.raw_score = get<int>(j, "raw_score");
  v.s_fair = get<double>(j, "s_fair");
}

Json to_json(const ScoreWeights& v) {
  Json j;
  j["w_fair"] = v.fair;
  j["w_license"] = v.license;
  j["w_maintainability"] = v.maintainability;
  j["w_documentation"] = v.documentation;
  j["w_citations"] = v.citations;
  j["w_reuse"] = v.reuse;
  j["w_quality"] = v.quality;
  j["impact_count_cap"] = opt(v.impact_count_cap);
  return j;
}

void read_json(const Json& j, ScoreWeights& v) {
  v.fair = get<double>(j, "w_fair");
  v.license = get<double>(j, "w_license");
  v.maintainability = get<double>(j, "w_maintainability");
  v.documentation = get<double>(j, "w_documentation");
  v.citations = get<double>(j, "w_citations");
  v.reuse = get<double>(j, "w_reuse");
  v.quality = get<double>(j, "w_quality");
  v.impact_count_cap = get_opt_count(j, "impact_count_cap");
}

Json to_json(const ScoreCard& v) {
  Json j;
  j["s_fair"] = v.s_fair;
  j["s_license"] = v.s_license;
  j["s_maintainability"] = v.s_maintainability;
  j["s_documentation"] = v.s_documentation;
  j["s_quality"] = v.s_quality;
  j["s_impact"] = v.s_impact;
  j["s_impact_raw"] = v.s_impact_raw;
  j["n_citations"] = v.n_citations;
  j["n_reuse_projects"] = v.n_reuse_projects;
  j["weights"] = to_json(v.weights);
  return j;
}

void read_json(const Json& j, ScoreCard& v) {
  v.s_fair = get<double>(j, "s_fair");
  v.s_license = get<double>(j, "s_license");
  v.s_maintainability = get<double>(j, "s_maintainability");
  v.s_documentation = get<double>(j, "s_documentation");
  v.s_quality = get<double>(j, "s_quality");
  v.s_impact = get<double>(j, "s_impact");
  v.s_impact_raw = get<double>(j, "s_impact_raw");
  v.n_citations = get_count(j, "n_citations");
  v.n_reuse_projects = get_count(j, "n_reuse_projects");
  read_json(at(j, "weights"), v.weights);
  try {
    validate_scorecard(v);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

// ---- citation file ---------------------------------------------------------

Json to_json(const CitationMetadata& v) {
  Json j;
  j["cff_version"] = v.cff_version;
  j["title"] = v.title;
  Json authors = Json::array();
  for (const auto& a : v.authors) {
    Json e;
    e["family_names"] = a.family_names;
    e["given_names"] = a.given_names;
    e["orcid"] = opt(a.orcid);
    authors.push_back(e);
  }
  j["authors"] = authors;
  j["doi"] = opt(v.doi);
  j["version"] = opt(v.version);
  j["date_released"] = opt(v.date_released);
  return j;
}

void read_json(const Json& j, CitationMetadata& v) {
  v.cff_version = get<std::string>(j, "cff_version");
  v.title = get<std::string>(j, "title");
  v.authors.clear();
  const Json& authors = at(j, "authors");
  if (!authors.is_array()) throw ParseError("key 'authors' must be an array");
  for (const auto& a : authors)
    v.authors.push_back({get<std::string>(a, "family_names"), get<std::string>(a, "given_names"),
                         get_opt<std::string>(a, "orcid")});
  v.doi = get_opt<std::string>(j, "doi");
  v.version = get_opt<std::string>(j, "version");
  v.date_released = get_opt<std::string>(j, "date_released");
}

// ---- licenses --------------------------------------------------------------

Json to_json(const Dependency& v) {
  Json j;
  j["name"] = v.name;
  j["version"] = opt(v.version);
  j["ecosystem"] = v.ecosystem;
  j["license"] = opt(v.license_id);
  j["direct"] = v.direct;
  return j;
}

void read_json(const Json& j, Dependency& v) {
  v.name = get<std::string>(j, "name");
  v.version = get_opt<std::string>(j, "version");
  v.ecosystem = get<std::string>(j, "ecosystem");
  v.license_id = get_opt<std::string>(j, "license");
  v.direct = get<bool>(j, "direct");
}

Json to_json(const LicenseFinding& v) {
  Json j = to_json(v.dependency);
  j["verdict"] = std::string(to_string(v.verdict));
  j["rationale"] = v.rationale;
  return j;
}

void read_json(const Json& j, LicenseFinding& v) {
  read_json(j, v.dependency);
  auto verdict = verdict_from_string(get<std::string>(j, "verdict"));
  if (!verdict) throw ParseError("unknown license verdict");
  v.verdict = *verdict;
  v.rationale = get<std::string>(j, "rationale");
}

Json to_json(const LicenseAuditResult& v) {
  Json j;
  j["root_license"] = opt(v.root_license);
  j["n_licenses"] = v.n_licenses;
  j["violated_count"] = v.violated_count;
  j["fraction_ok"] = v.fraction_ok;
  j["findings"] = list(v.findings);
  return j;
}

void read_json(const Json& j, LicenseAuditResult& v) {
  v.root_license = get_opt<std::string>(j, "root_license");
  v.n_licenses = get_count(j, "n_licenses");
  v.violated_count = get_count(j, "violated_count");
  v.fraction_ok = get<double>(j, "fraction_ok");
  v.findings = get_list<LicenseFinding>(j, "findings");
}

Json to_json(const SbomDocument& v) {
  Json j;
  j["subject"]["name"] = v.subject_name;
  j["subject"]["version"] = opt(v.subject_version);
  j["components"] = list(v.components);
  j["generated_at"] = format_utc(v.generated_at);
  j["tool"]["name"] = v.tool_name;
  j["tool"]["version"] = v.tool_version;
  return j;
}

void read_json(const Json& j, SbomDocument& v) {
  const Json& subject = at(j, "subject");
  v.subject_name = get<std::string>(subject, "name");
  v.subject_version = get_opt<std::string>(subject, "version");
  v.components = get_list<Dependency>(j, "components");
  v.generated_at = get_time(j, "generated_at");
  const Json& tool = at(j, "tool");
  v.tool_name = get<std::string>(tool, "name");
  v.tool_version = get<std::string>(tool, "version");
}

// ---- citations -------------------------------------------------------------

Json to_json(const CitationRecord& v) {
  Json j;
  j["title"] = v.title;
  j["authors"] = v.authors;
  j["source"] = std::string(to_string(v.source_catalog));
  j["publication_date"] = opt(v.publication_date);
  j["doi"] = opt(v.doi);
  j["url"] = opt(v.url);
  j["fields_of_study"] = v.fields_of_study;
  j["cited_by_count"] = opt(v.cited_by_count);
  j["venue"] = opt(v.venue);
  return j;
}

void read_json(const Json& j, CitationRecord& v) {
  v.title = get<std::string>(j, "title");
  v.authors = get<std::vector<std::string>>(j, "authors");
  auto source = catalog_from_string(get<std::string>(j, "source"));
  if (!source) throw ParseError("unknown citation source catalog");
  v.source_catalog = *source;
  v.publication_date = get_opt<std::string>(j, "publication_date");
  v.doi = get_opt<std::string>(j, "doi");
  v.url = get_opt<std::string>(j, "url");
  v.fields_of_study = get<std::vector<std::string>>(j, "fields_of_study");
  v.cited_by_count = get_opt_count(j, "cited_by_count");
  v.venue = get_opt<std::string>(j, "venue");
}

Json to_json(const CitationSet& v) {
  Json j;
  j["n_citations"] = v.n_citations;
  j["records"] = list(v.records);
  return j;
}

void read_json(const Json& j, CitationSet& v) {
  v.n_citations = get_count(j, "n_citations");
  v.records = get_list<CitationRecord>(j, "records");
  if (v.n_citations != v.records.size()) throw ParseError("n_citations disagrees with the record list");
}

Json to_json(const RadarData& v) {
  Json j;
  j["total"] = v.total;
  Json axes = Json::array();
  for (const auto& a : v.axes) {
    Json e;
    e["field"] = a.field;
    e["count"] = a.count;
    axes.push_back(e);
  }
  j["axes"] = axes;
  return j;
}

void read_json(const Json& j, RadarData& v) {
  v.total = get_count(j, "total");
  v.axes.clear();
  const Json& axes = at(j, "axes");
  if (!axes.is_array()) throw ParseError("key 'axes' must be an array");
  for (const auto& a : axes) v.axes.push_back({get<std::string>(a, "field"), get_count(a, "count")});
}

// ---- reuse -------------------------------------------------------------------

Json to_json(const MethodFingerprint& v) {
  Json j;
  j["hash"] = v.hash;
  j["project"] = v.project;
  j["method"] = v.method;
  j["file"] = v.file;
  j["line"] = v.line;
  return j;
}

void read_json(const Json& j, MethodFingerprint& v) {
  v.hash = get<std::string>(j, "hash");
  v.project = get<std::string>(j, "project");
  v.method = get<std::string>(j, "method");
  v.file = get<std::string>(j, "file");
  v.line = get<int>(j, "line");
}

Json to_json(const ReuseMatch& v) {
  Json j;
  j["local"] = to_json(v.local);
  j["local_end_line"] = v.local_end_line;
  j["direction"] = std::string(to_string(v.direction));
  j["remote"] = list(v.remote);
  return j;
}

void read_json(const Json& j, ReuseMatch& v) {
  read_json(at(j, "local"), v.local);
  v.local_end_line = get<int>(j, "local_end_line");
  auto d = reuse_direction_from_string(get<std::string>(j, "direction"));
  if (!d) throw ParseError("unknown reuse direction");
  v.direction = *d;
  v.remote = get_list<MethodFingerprint>(j, "remote");
}

Json to_json(const ReuseReport& v) {
  Json j;
  j["n_reuse_projects"] = v.n_reuse_projects;
  j["matches"] = list(v.matches);
  return j;
}

void read_json(const Json& j, ReuseReport& v) {
  v.n_reuse_projects = get_count(j, "n_reuse_projects");
  v.matches = get_list<ReuseMatch>(j, "matches");
}

}  // namespace fairseco
