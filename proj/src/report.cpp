#include "fairseco/report.hpp"

#include <fstream>
#include <system_error>
#include <unistd.h>

#include <fmt/format.h>

#include "fairseco/scoring.hpp"
#include "fairseco/timeutil.hpp"

namespace fairseco {

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  return to_json(*v);
}

// Strip everything that depends on where the checkout lives.
RepositorySnapshot summarize(RepositorySnapshot s) {
  s.ref.local_path.reset();
  s.inventory.root.clear();
  s.inventory.readme_text.reset();
  s.inventory.citation_text.reset();
  return s;
}

}  // namespace

ReportDocument build_report(ReportInputs in) {
  if (!in.snapshot) throw ValidationError("report is missing the repository snapshot");
  if (!in.fairness) throw ValidationError("report is missing the FAIRness assessment");
  if (!in.license_audit) throw ValidationError("report is missing the license audit");
  if (!in.scorecard) throw ValidationError("report is missing the scorecard");
  if (!scorecard_consistent(*in.scorecard))
    throw ValidationError("scorecard composites do not recombine from its inputs");
  if (in.scorecard->n_citations != in.citations.n_citations)
    throw ValidationError("scorecard citation count disagrees with the citation set");
  if (in.scorecard->n_reuse_projects != in.reuse.n_reuse_projects)
    throw ValidationError("scorecard reuse count disagrees with the reuse report");

  ReportDocument doc;
  doc.generated_at = in.generated_at;
  doc.snapshot = summarize(std::move(*in.snapshot));
  doc.citation_metadata = std::move(in.citation_metadata);
  doc.fairness = std::move(*in.fairness);
  doc.license_audit = std::move(*in.license_audit);
  doc.software_doi = std::move(in.software_doi);
  doc.citations_status = std::move(in.citations_status);
  doc.radar = field_distribution(in.citations);
  doc.highlight = highlight_paper(in.citations);
  doc.citations = std::move(in.citations);
  doc.reuse_status = std::move(in.reuse_status);
  doc.reuse = std::move(in.reuse);
  doc.scorecard = *in.scorecard;
  doc.warnings = std::move(in.warnings);
  return doc;
}

Json to_json(const ReportDocument& r) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["generated_at"] = format_utc(r.generated_at);
  j["snapshot"] = to_json(r.snapshot);
  j["citation_metadata"] = opt(r.citation_metadata);
  j["fairness"] = to_json(r.fairness);
  j["license_audit"] = to_json(r.license_audit);
  j["citations"]["status"] = r.citations_status;
  j["citations"]["software_doi"] = r.software_doi ? Json(*r.software_doi) : Json(nullptr);
  j["citations"]["set"] = to_json(r.citations);
  j["citations"]["radar"] = to_json(r.radar);
  j["citations"]["highlight"] = opt(r.highlight);
  j["reuse"]["status"] = r.reuse_status;
  j["reuse"]["report"] = to_json(r.reuse);
  j["scorecard"] = to_json(r.scorecard);
  // Integer percents as shown in the HTML; ignored when reading.
  Json display;
  display["s_fair"] = display_percent(r.scorecard.s_fair);
  display["s_license"] = display_percent(r.scorecard.s_license);
  display["s_maintainability"] = display_percent(r.scorecard.s_maintainability);
  display["s_documentation"] = display_percent(r.scorecard.s_documentation);
  display["s_quality"] = display_percent(r.scorecard.s_quality);
  display["s_impact"] = display_percent(r.scorecard.s_impact);
  j["display"] = display;
  j["warnings"] = r.warnings;
  return j;
}

void read_json(const Json& j, ReportDocument& r) {
  try {
    r.schema_version = j.at("schema_version").get<std::string>();
    if (r.schema_version != kReportSchemaVersion)
      throw ParseError(fmt::format("unsupported report schema_version '{}'", r.schema_version));
    auto when = parse_utc(j.at("generated_at").get<std::string>());
    if (!when) throw ParseError("report generated_at is not a timestamp");
    r.generated_at = *when;
    read_json(j.at("snapshot"), r.snapshot);
    r.citation_metadata.reset();
    if (!j.at("citation_metadata").is_null())
      r.citation_metadata = from_json<CitationMetadata>(j.at("citation_metadata"));
    read_json(j.at("fairness"), r.fairness);
    read_json(j.at("license_audit"), r.license_audit);
    const Json& c = j.at("citations");
    r.citations_status = c.at("status").get<std::string>();
    r.software_doi.reset();
    if (!c.at("software_doi").is_null()) r.software_doi = c.at("software_doi").get<std::string>();
    read_json(c.at("set"), r.citations);
    read_json(c.at("radar"), r.radar);
    r.highlight.reset();
    if (!c.at("highlight").is_null()) r.highlight = from_json<CitationRecord>(c.at("highlight"));
    const Json& reuse = j.at("reuse");
    r.reuse_status = reuse.at("status").get<std::string>();
    read_json(reuse.at("report"), r.reuse);
    read_json(j.at("scorecard"), r.scorecard);
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("malformed report: {}", e.what()));
  }
}

ReportDocument parse_report(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("report is not valid JSON: {}", e.what()));
  }
  return from_json<ReportDocument>(j);
}

SbomDocument sbom_for(const ReportDocument& r) {
  std::vector<Dependency> deps;
  for (const auto& f : r.license_audit.findings) deps.push_back(f.dependency);
  std::optional<std::string> version;
  if (r.citation_metadata) version = r.citation_metadata->version;
  return generate_sbom(r.snapshot.metadata, std::move(deps), version, r.generated_at);
}

Json license_audit_document(const ReportDocument& r) {
  Json j;
  j["subject"] = r.snapshot.ref.slug();
  j["generated_at"] = format_utc(r.generated_at);
  j["root_license"] = r.license_audit.root_license ? Json(*r.license_audit.root_license) : Json(nullptr);
  j["n_licenses"] = r.license_audit.n_licenses;
  j["violated_count"] = r.license_audit.violated_count;
  j["fraction_ok"] = r.license_audit.fraction_ok;
  j["s_license"] = r.scorecard.s_license;
  Json findings = Json::array();
  for (const auto& f : r.license_audit.findings) findings.push_back(to_json(f));
  j["findings"] = findings;
  return j;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write {}", path.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(fmt::format("cannot write {}", path.string()));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw Error(fmt::format("cannot write {}: {}", path.string(), ec.message()));
  }
}

std::vector<std::filesystem::path> write_artifacts(const ReportDocument& report,
                                                   const std::filesystem::path& out_dir,
                                                   const ImpactHistory* history) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(fmt::format("cannot create output directory {}: {}", out_dir.string(), ec.message()));

  const std::pair<const char*, std::string> files[] = {
      {"report.json", dump_pretty(to_json(report))},
      {"report.html", render_html(report, history)},
      {"sbom.json", dump_pretty(to_json(sbom_for(report)))},
      {"license-audit.json", dump_pretty(license_audit_document(report))},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& [name, content] : files) {
    const auto path = out_dir / name;
    write_file_atomic(path, content);
    written.push_back(path);
  }
  return written;
}

}  // namespace fairseco
