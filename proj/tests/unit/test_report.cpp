#include <doctest.h>

#include <regex>

#include "fairseco/fairness.hpp"
#include "fairseco/history.hpp"
#include "fairseco/report.hpp"
#include "fairseco/scoring.hpp"
#include "test_support.hpp"

using namespace fairseco;
using namespace fairseco::testing;

namespace {

FairnessAssessment fairness_with(int passed) {
  std::array<CheckResult, 5> checks;
  for (int i = 0; i < 5; ++i) {
    checks[i].recommendation = static_cast<Recommendation>(i + 1);
    checks[i].passed = i < passed;
    checks[i].evidence = {i < passed ? "evidence" : "missing"};
  }
  return assess_fairness(checks);
}

ReportInputs minimal_inputs(Timestamp at = ts(1709290800)) {
  ReportInputs in;
  RepositorySnapshot snap;
  snap.ref = make_repository_ref("github.com", "fixture-org", "tiny", std::filesystem::path{"/tmp/tiny"});
  snap.metadata.title = "tiny";
  snap.metadata.owner = "fixture-org";
  snap.metadata.is_public = true;
  snap.metadata.assessed_at = at;
  snap.inventory.root = "/tmp/tiny";
  snap.inventory.has_readme = true;
  snap.inventory.readme_file = "README.md";
  snap.inventory.readme_text = "# tiny";
  in.snapshot = snap;
  in.fairness = fairness_with(2);
  in.license_audit = LicenseAuditResult{std::string("MIT"), {}, 0, 0, 1.0};
  in.citations_status = std::string(section_status::kNotApplicable);
  in.reuse_status = std::string(section_status::kNotApplicable);
  in.scorecard = build_scorecard(ScoreInputs{40, 100, 100, 50, 0, 0}, ScoreWeights{});
  in.generated_at = at;
  return in;
}

ReportInputs rich_inputs(Timestamp at = ts(1709290800)) {
  auto in = minimal_inputs(at);
  in.citations_status = std::string(section_status::kAvailable);
  in.software_doi = "10.5281/zenodo.596127";
  CitationRecord a;
  a.title = "First <citing> & paper";
  a.authors = {"A. Jansen"};
  a.doi = "10.1/a";
  a.fields_of_study = {"Computer Science"};
  a.cited_by_count = 42;
  a.publication_date = "2019-05-14";
  CitationRecord b = a;
  b.title = "Second";
  b.doi = "10.1/b";
  b.fields_of_study = {"Medicine", "Computer Science"};
  b.cited_by_count = 3;
  b.source_catalog = Catalog::SemanticScholar;
  CitationRecord c = a;
  c.title = "Third";
  c.doi = "10.1/c";
  c.fields_of_study = {"Medicine"};
  c.cited_by_count = 1;
  std::vector<std::vector<CitationRecord>> lists{{a, c}, {b}};
  in.citations = merge_citations(lists);
  in.reuse_status = std::string(section_status::kAvailable);
  ReuseMatch m;
  m.local = MethodFingerprint{std::string(64, 'a'), "fit", "pkg/model.py", 10, "tiny"};
  m.local_end_line = 20;
  m.remote = {MethodFingerprint{std::string(64, 'a'), "f2", "x.py", 3, "other"}};
  in.reuse.matches = {m};
  in.reuse.n_reuse_projects = 1;
  in.scorecard = build_scorecard(ScoreInputs{40, 100, 100, 50, 3, 1}, ScoreWeights{});
  in.warnings = {"setup.py: unrecognized manifest format, skipped"};
  return in;
}

ReportDocument with_quality(Timestamp at, double s_fair, std::uint64_t nc) {
  auto in = minimal_inputs(at);
  in.fairness = fairness_with(static_cast<int>(s_fair / 20));
  in.scorecard = build_scorecard(ScoreInputs{s_fair, 100, 100, 50, nc, 0}, ScoreWeights{});
  std::vector<CitationRecord> recs;
  for (std::uint64_t i = 0; i < nc; ++i) {
    CitationRecord r;
    r.title = "t" + std::to_string(i);
    recs.push_back(r);
  }
  in.citations = merge_citations(std::vector<std::vector<CitationRecord>>{recs});
  return build_report(in);
}

}  // namespace

TEST_CASE("build_report names the missing section") {
  auto in = minimal_inputs();
  in.fairness.reset();
  CHECK_THROWS_WITH_AS(build_report(in), "report is missing the FAIRness assessment", ValidationError);
  in = minimal_inputs();
  in.scorecard.reset();
  CHECK_THROWS_WITH_AS(build_report(in), "report is missing the scorecard", ValidationError);
  in = minimal_inputs();
  in.snapshot.reset();
  CHECK_THROWS_AS(build_report(in), ValidationError);
  in = minimal_inputs();
  in.license_audit.reset();
  CHECK_THROWS_AS(build_report(in), ValidationError);
}

TEST_CASE("build_report rejects inconsistent scorecards") {
  auto in = minimal_inputs();
  in.scorecard->s_quality = 12;
  CHECK_THROWS_AS(build_report(in), ValidationError);
  in = minimal_inputs();
  in.scorecard = build_scorecard(ScoreInputs{40, 100, 100, 50, 7, 0}, ScoreWeights{});
  CHECK_THROWS_AS(build_report(in), ValidationError);
}

TEST_CASE("minimal repository still yields a complete document") {
  auto doc = build_report(minimal_inputs());
  CHECK(doc.schema_version == "1");
  CHECK(doc.citations.records.empty());
  CHECK(doc.radar.axes.empty());
  CHECK_FALSE(doc.highlight);
  CHECK(doc.reuse.matches.empty());
  CHECK(doc.scorecard.s_quality == doctest::Approx(build_scorecard(ScoreInputs{40, 100, 100, 50, 0, 0}, ScoreWeights{}).s_quality));
  // Host-specific details do not leak into the document.
  CHECK_FALSE(doc.snapshot.ref.local_path);
  CHECK(doc.snapshot.inventory.root.empty());
  CHECK_FALSE(doc.snapshot.inventory.readme_text);
}

TEST_CASE("report JSON round trip") {
  for (auto in : {minimal_inputs(), rich_inputs()}) {
    auto doc = build_report(in);
    const auto text = dump_pretty(to_json(doc));
    auto back = parse_report(text);
    CHECK(back == doc);
    CHECK(dump_pretty(to_json(back)) == text);
  }
  auto doc = build_report(rich_inputs());
  REQUIRE(doc.highlight);
  CHECK(doc.highlight->cited_by_count == std::optional<std::uint64_t>{42});
  CHECK(doc.radar.axes.size() == 2);
}

TEST_CASE("report parsing rejects bad documents") {
  CHECK_THROWS_AS(parse_report("{"), ParseError);
  CHECK_THROWS_AS(parse_report("[]"), ParseError);
  auto j = to_json(build_report(minimal_inputs()));
  j["schema_version"] = "2";
  CHECK_THROWS_AS(parse_report(j.dump()), ParseError);
}

TEST_CASE("HTML has the seven sections and no external references") {
  auto html = render_html(build_report(rich_inputs()));
  CHECK(count_occurrences(html, "<section") == 7);
  for (const char* heading : {"Overview", "Citation", "FAIRness", "License violation", "Impact",
                              "Quality Score", "Impact History"})
    CHECK(html.find(std::string(">") + heading + "<") != std::string::npos);
  for (const char* id : {"overview", "citation", "fairness", "license", "impact", "quality", "history"}) {
    CHECK(count_occurrences(html, std::string("<section id=\"") + id + "\"") == 1);
    CHECK(html.find(std::string("href=\"#") + id + "\"") != std::string::npos);
  }
  CHECK(html.find("<script src") == std::string::npos);
  CHECK(html.find("<link") == std::string::npos);
  CHECK(html.find("src=\"http") == std::string::npos);
  CHECK(html.find("url(") == std::string::npos);
  CHECK(html.find("@import") == std::string::npos);
  CHECK(html.find("First &lt;citing&gt; &amp; paper") != std::string::npos);
  CHECK(html.find("<citing>") == std::string::npos);
}

TEST_CASE("HTML overview facts") {
  auto in = rich_inputs();
  in.snapshot->metadata.stars = 61;
  in.snapshot->metadata.watchers = 12;
  in.snapshot->metadata.forks = 22;
  CitationMetadata cff;
  cff.cff_version = "1.2.0";
  cff.title = "tiny";
  cff.authors = {{"Doe", "Jo", std::nullopt}};
  cff.date_released = "2023-06-01";
  in.citation_metadata = cff;
  auto html = render_html(build_report(in));
  for (const char* fact : {"61", "12", "22", "fixture-org", "2023-06-01"})
    CHECK(html.find(fact) != std::string::npos);
}

TEST_CASE("radar: one axis per field, placeholder when empty") {
  auto html = render_html(build_report(rich_inputs()));
  CHECK(html.find("class=\"radar\"") != std::string::npos);
  CHECK(html.find(">Computer Science (") != std::string::npos);
  CHECK(html.find(">Medicine (") != std::string::npos);
  CHECK(html.find("no citations") == std::string::npos);
  auto empty = render_html(build_report(minimal_inputs()));
  CHECK(empty.find("no citations") != std::string::npos);
  CHECK(empty.find("class=\"radar\"") == std::string::npos);
  CHECK(count_occurrences(empty, "<section") == 7);
}

TEST_CASE("HTML rendering is deterministic") {
  CHECK(render_html(build_report(rich_inputs())) == render_html(build_report(rich_inputs())));
}

TEST_CASE("license audit and SBOM artifacts") {
  auto in = rich_inputs();
  Dependency d;
  d.name = "numpy";
  d.ecosystem = "python-package";
  d.license_id = "BSD-3-Clause";
  in.license_audit->findings = {LicenseFinding{d, Verdict::Compatible, "BSD-3-Clause may be used in a MIT project"}};
  in.license_audit->n_licenses = 1;
  CitationMetadata cff;
  cff.cff_version = "1.2.0";
  cff.title = "tiny";
  cff.authors = {{"Doe", "Jo", std::nullopt}};
  cff.version = "1.0.0";
  in.citation_metadata = cff;
  auto doc = build_report(in);
  auto audit = license_audit_document(doc);
  CHECK(audit["n_licenses"] == 1);
  CHECK(audit["findings"][0]["verdict"] == "compatible");
  CHECK(audit["findings"][0]["rationale"] == "BSD-3-Clause may be used in a MIT project");
  auto sbom = sbom_for(doc);
  CHECK(sbom.subject_version == std::optional<std::string>{"1.0.0"});
  REQUIRE(sbom.components.size() == 1);
  CHECK(sbom.generated_at == doc.generated_at);
  auto empty = sbom_for(build_report(minimal_inputs()));
  CHECK(empty.components.empty());
}

TEST_CASE("write_artifacts writes four files") {
  TempDir d;
  auto doc = build_report(rich_inputs());
  auto written = write_artifacts(doc, d / "out");
  REQUIRE(written.size() == 4);
  for (const char* f : {"report.json", "report.html", "sbom.json", "license-audit.json"})
    CHECK(std::filesystem::exists(d / "out" / f));
  CHECK(parse_report(read_file(d / "out" / "report.json")) == doc);
  auto sbom = Json::parse(read_file(d / "out" / "sbom.json"));
  CHECK(sbom["components"].is_array());
  CHECK(sbom["subject"]["name"] == "fixture-org/tiny");
  // Nothing but the four artifacts (no temporaries) is left behind.
  CHECK(std::distance(std::filesystem::directory_iterator(d / "out"), std::filesystem::directory_iterator{}) == 4);
}

TEST_CASE("write_artifacts reports the failing path") {
  TempDir d;
  write_file(d / "out" / "report.html" / "blocker", "x");
  try {
    write_artifacts(build_report(minimal_inputs()), d / "out");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("report.html") != std::string::npos);
  }
  write_file(d / "plainfile", "x");
  try {
    write_artifacts(build_report(minimal_inputs()), d / "plainfile" / "sub");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("plainfile") != std::string::npos);
  }
}

// ---- history --------------------------------------------------------------------

TEST_CASE("make_history computes fieldwise deltas") {
  auto h = make_history({HistoryEntry{ts(100), 80, 60, 3, 1}, HistoryEntry{ts(200), 92, 80, 4, 5},
                         HistoryEntry{ts(300), 90.5, 80, 2, 5}});
  REQUIRE(h.deltas.size() == 2);
  CHECK(h.deltas[0] == HistoryDelta{ts(100), ts(200), 12, 20, 1, 4});
  CHECK(h.deltas[1].s_quality == doctest::Approx(-1.5));
  CHECK(h.deltas[1].n_citations == -2);
  CHECK(make_history({}).deltas.empty());
  CHECK_THROWS_AS(make_history({HistoryEntry{ts(200)}, HistoryEntry{ts(100)}}), ValidationError);
  CHECK_THROWS_AS(make_history({HistoryEntry{ts(200)}, HistoryEntry{ts(200)}}), ValidationError);
}

TEST_CASE("history JSON round trip and corruption") {
  auto h = make_history({HistoryEntry{ts(100), 80, 60, 3, 1}, HistoryEntry{ts(200), 92.25, 80, 4, 5}});
  CHECK(parse_history(history_to_json(h)) == h);
  CHECK_THROWS_AS(parse_history("{"), ParseError);
  CHECK_THROWS_AS(parse_history(R"({"schema_version":"1","entries":[{"timestamp":"bad"}]})"), ParseError);
  auto text = history_to_json(make_history({HistoryEntry{ts(100)}, HistoryEntry{ts(200)}}));
  auto swapped = std::regex_replace(text, std::regex("1970-01-01T00:01:40Z"), "1970-01-01T00:05:00Z");
  CHECK_THROWS_AS(parse_history(swapped), ParseError);
}

TEST_CASE("append_history: first run, then a delta") {
  TempDir d;
  const auto file = d / "history.json";
  auto first = with_quality(ts(1000), 60, 0);
  auto h1 = append_history(first, file);
  CHECK(h1.entries.size() == 1);
  CHECK(h1.deltas.empty());
  CHECK(format_history_table(h1).find("first run") != std::string::npos);

  auto second = with_quality(ts(2000), 100, 4);
  const double dq = second.scorecard.s_quality - first.scorecard.s_quality;
  auto h2 = append_history(second, file);
  REQUIRE(h2.entries.size() == 2);
  CHECK(h2.entries[0] == h1.entries[0]);
  REQUIRE(h2.deltas.size() == 1);
  CHECK(h2.deltas[0].s_quality == doctest::Approx(dq));
  CHECK(h2.deltas[0].s_fair == 40.0);
  CHECK(h2.deltas[0].n_citations == 4);
  CHECK(load_history(file) == h2);
  auto table = format_history_table(h2);
  CHECK(count_occurrences(table, "delta ") == 1);
}

TEST_CASE("append_history example: quality 80 to 92") {
  TempDir d;
  const auto file = d / "history.json";
  write_file(file, history_to_json(make_history({HistoryEntry{ts(10), 80, 80, 4, 5}})));
  auto in = minimal_inputs(ts(20));
  in.fairness = fairness_with(4);
  // Equal weights: (80 + 100 + 88 + 100) / 4 = 92.
  ScoreWeights w{1, 1, 1, 1, 1, 1, 1, std::nullopt};
  in.scorecard = build_scorecard(ScoreInputs{80, 100, 88, 100, 0, 0}, w);
  auto h = append_history(build_report(in), file);
  REQUIRE(h.deltas.size() == 1);
  CHECK(h.deltas[0].s_quality == doctest::Approx(12.0));
}

TEST_CASE("append_history refuses a corrupt file and leaves it untouched") {
  TempDir d;
  const auto file = d / "history.json";
  const std::string garbage = "{\"schema_version\": \"1\", \"entries\": [ truncated";
  write_file(file, garbage);
  CHECK_THROWS_AS(append_history(with_quality(ts(5), 60, 0), file), ParseError);
  CHECK(read_file(file) == garbage);
  CHECK_THROWS_AS(load_history(file), ParseError);
}

TEST_CASE("append_history refuses a stale timestamp") {
  TempDir d;
  const auto file = d / "history.json";
  append_history(with_quality(ts(500), 60, 0), file);
  const auto before = read_file(file);
  CHECK_THROWS_AS(append_history(with_quality(ts(500), 80, 0), file), ValidationError);
  CHECK_THROWS_AS(append_history(with_quality(ts(400), 80, 0), file), ValidationError);
  CHECK(read_file(file) == before);
}

TEST_CASE("load_history of an absent file is empty") {
  TempDir d;
  CHECK(load_history(d / "none.json").entries.empty());
  auto preview = preview_history(with_quality(ts(1), 60, 0), d / "none.json");
  CHECK(preview.entries.size() == 1);
  CHECK_FALSE(std::filesystem::exists(d / "none.json"));
}

TEST_CASE("history table layout") {
  auto h = make_history({HistoryEntry{ts(0), 80, 60, 3, 1}, HistoryEntry{ts(86400), 92, 80, 4, 5}});
  auto table = format_history_table(h);
  CHECK(table.find("latest run") != std::string::npos);
  CHECK(table.find("current") != std::string::npos);
  CHECK(table.find("+12.00") != std::string::npos);
  CHECK(table.find("+20.00") != std::string::npos);
  CHECK(table.find("+1") != std::string::npos);
  CHECK(table.find("+4") != std::string::npos);
  // Fixed width: every data row has the same length.
  std::istringstream lines(table);
  std::string line;
  std::vector<std::size_t> widths;
  while (std::getline(lines, line))
    if (line.starts_with("current") || line.starts_with("delta")) widths.push_back(line.size());
  REQUIRE(widths.size() == 2);
  CHECK(widths[0] == widths[1]);
}

TEST_CASE("history section in the HTML") {
  auto doc = build_report(rich_inputs());
  auto none = render_html(doc, nullptr);
  CHECK(none.find("id=\"history\"") != std::string::npos);
  auto h = make_history({HistoryEntry{ts(0), 80, 60, 3, 1}, HistoryEntry{ts(86400), 92, 80, 4, 5}});
  auto with = render_html(doc, &h);
  CHECK(with.find("+12.00") != std::string::npos);
  CHECK(count_occurrences(with, "<section") == 7);
}
