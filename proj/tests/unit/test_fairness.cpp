#include <doctest.h>

#include <algorithm>
#include <array>

#include "fairness_fixture.hpp"
#include "fairseco/cff.hpp"
#include "fairseco/fairness.hpp"
#include "test_support.hpp"

using namespace fairseco;
using namespace fairseco::testing;

namespace {

constexpr const char* kMinimalCff = R"(cff-version: "1.2.0"
title: "mcfly"
authors:
  - family-names: "van Kuppevelt"
    given-names: "Dafne"
)";

FileInventory inventory_with_readme(std::string text) {
  FileInventory inv;
  inv.has_readme = true;
  inv.readme_file = "README.md";
  inv.readme_text = std::move(text);
  return inv;
}

FileInventory inventory_with_cff(std::string text) {
  FileInventory inv;
  inv.citation_file = "CITATION.cff";
  inv.citation_text = std::move(text);
  return inv;
}

std::array<CheckResult, 5> results(std::array<bool, 5> passed) {
  std::array<CheckResult, 5> out;
  for (int i = 0; i < 5; ++i) {
    out[i].recommendation = static_cast<Recommendation>(i + 1);
    out[i].passed = passed[i];
    out[i].evidence = {"fixture evidence"};
  }
  return out;
}

}  // namespace

TEST_CASE("parse_cff minimal document") {
  auto meta = parse_cff(kMinimalCff);
  CHECK(meta.cff_version == "1.2.0");
  CHECK(meta.title == "mcfly");
  REQUIRE(meta.authors.size() == 1);
  CHECK(meta.authors[0].family_names == "van Kuppevelt");
  CHECK(meta.authors[0].given_names == "Dafne");
  CHECK_FALSE(meta.doi);
  CHECK_FALSE(meta.version);
}

TEST_CASE("parse_cff names a missing title") {
  try {
    parse_cff("cff-version: 1.2.0\nauthors:\n  - name: Someone\n");
    FAIL("expected failure");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("title") != std::string::npos);
  }
}

TEST_CASE("parse_cff keeps the DOI verbatim") {
  auto meta = parse_cff(std::string(kMinimalCff) + "doi: 10.5281/zenodo.1234567\n");
  CHECK(meta.doi == std::optional<std::string>{"10.5281/zenodo.1234567"});
}

TEST_CASE("parse_cff rejects bad documents") {
  CHECK_THROWS_AS(parse_cff("cff-version: 1.2.0\ntitle: x\nauthors: []\n"), ParseError);
  CHECK_THROWS_AS(parse_cff("- just\n- a list\n"), ParseError);
  CHECK_THROWS_AS(parse_cff("title: [unclosed\n"), ParseError);
  CHECK_THROWS_AS(parse_cff(std::string(kMinimalCff) + "doi: not-a-doi\n"), ParseError);
  CHECK_THROWS_AS(parse_cff(std::string(kMinimalCff) + "date-released: 2023-02-30\n"), ParseError);
  CHECK_THROWS_AS(parse_cff("title: x\nauthors:\n  - name: A\n"), ParseError);
}

TEST_CASE("parse_cff ignores unknown keys and reads entity authors and ORCIDs") {
  auto meta = parse_cff(R"(cff-version: 1.2.0
title: tool
message: please cite
keywords: [a, b]
authors:
  - name: "The Tool Team"
  - family-names: Doe
    given-names: Jo
    orcid: https://orcid.org/0000-0001-2345-6789
version: 2.1
date-released: 2024-01-15
)");
  REQUIRE(meta.authors.size() == 2);
  CHECK(meta.authors[0].family_names == "The Tool Team");
  CHECK(meta.authors[1].orcid == std::optional<std::string>{"https://orcid.org/0000-0001-2345-6789"});
  CHECK(meta.version == std::optional<std::string>{"2.1"});
  CHECK(meta.date_released == std::optional<std::string>{"2024-01-15"});
}

TEST_CASE("parse_cff round trip through to_cff") {
  CitationMetadata meta;
  meta.cff_version = "1.2.0";
  meta.title = "A: tricky \"title\" # with marks";
  meta.authors = {{"van Kuppevelt", "Dafne", "https://orcid.org/0000-0002-2662-1994"},
                  {"Meijer", "Christiaan", std::nullopt}};
  meta.doi = "10.5281/zenodo.596127";
  meta.version = "4.0";
  meta.date_released = "2023-06-01";
  CHECK(parse_cff(to_cff(meta)) == meta);
  CitationMetadata bare;
  bare.cff_version = "1.2.0";
  bare.title = "x";
  bare.authors = {{"Entity", "", std::nullopt}};
  CHECK(parse_cff(to_cff(bare)) == bare);
}

TEST_CASE("DOI helpers") {
  CHECK(is_valid_doi("10.5281/zenodo.1234567"));
  CHECK(is_valid_doi("10.1093/ije/dyab012"));
  CHECK_FALSE(is_valid_doi("10.5281"));
  CHECK_FALSE(is_valid_doi("11.1/x"));
  CHECK(normalize_doi("https://doi.org/10.5281/ZENODO.1") == "10.5281/zenodo.1");
  CHECK(normalize_doi("doi:10.1/AbC") == "10.1/abc");
  CHECK(is_registry_doi("10.5281/zenodo.42"));
  CHECK_FALSE(is_registry_doi("10.1093/ije/dyab012"));
}

TEST_CASE("R1 public repository") {
  auto ref = make_repository_ref("github.com", "NLeSC", "mcfly", std::nullopt);
  RepositoryMetadata pub;
  pub.is_public = true;
  auto r = check_r1_public(pub, ref);
  CHECK(r.passed);
  REQUIRE_FALSE(r.evidence.empty());
  CHECK(r.evidence[0].find("https://github.com/NLeSC/mcfly") != std::string::npos);
  RepositoryMetadata priv;
  CHECK_FALSE(check_r1_public(priv, ref).passed);
}

TEST_CASE("R2 license") {
  FileInventory with_file;
  with_file.license_file = "LICENSE";
  CHECK(check_r2_license(with_file, RepositoryMetadata{}).passed);
  CHECK_FALSE(check_r2_license(FileInventory{}, RepositoryMetadata{}).passed);
  RepositoryMetadata declared;
  declared.declared_license_id = "Apache-2.0";
  auto r = check_r2_license(FileInventory{}, declared);
  CHECK(r.passed);
  CHECK(r.evidence == std::vector<std::string>{"declared license Apache-2.0"});
}

TEST_CASE("R3 registry") {
  auto badge = inventory_with_readme(
      "[![DOI](https://zenodo.org/badge/DOI/10.5281/zenodo.596127.svg)](https://doi.org/10.5281/zenodo.596127)");
  CHECK(check_r3_registry(badge).passed);
  CHECK_FALSE(check_r3_registry(FileInventory{}).passed);
  auto cff = inventory_with_cff(std::string(kMinimalCff) + "doi: 10.5281/zenodo.7654321\n");
  auto r = check_r3_registry(cff);
  CHECK(r.passed);
  CHECK(r.evidence[0].find("10.5281/zenodo.7654321") != std::string::npos);
  auto journal = inventory_with_cff(std::string(kMinimalCff) + "doi: 10.1093/ije/dyab012\n");
  CHECK_FALSE(check_r3_registry(journal).passed);
  FileInventory zen;
  zen.has_zenodo_json = true;
  CHECK(check_r3_registry(zen).passed);
}

TEST_CASE("R4 citation file") {
  auto ok = check_r4_citation(inventory_with_cff(kMinimalCff));
  CHECK(ok.result.passed);
  REQUIRE(ok.metadata);
  CHECK(ok.metadata->title == "mcfly");
  auto none = check_r4_citation(FileInventory{});
  CHECK_FALSE(none.result.passed);
  CHECK_FALSE(none.metadata);
  auto broken = check_r4_citation(inventory_with_cff("cff-version: 1.2.0\ntitle: x\n"));
  CHECK_FALSE(broken.result.passed);
  CHECK_FALSE(broken.metadata);
  CHECK(broken.result.evidence[0].find("authors") != std::string::npos);
}

TEST_CASE("R5 checklist badge") {
  auto patterns = default_badge_patterns();
  auto best = inventory_with_readme(
      "[![OpenSSF Best Practices](https://www.bestpractices.dev/projects/42/badge)](https://www.bestpractices.dev/projects/42)");
  CHECK(check_r5_checklist(best, patterns).passed);
  auto fair = inventory_with_readme(
      "[![fair-software.eu](https://img.shields.io/badge/fair--software.eu-%E2%97%8F-green)](https://fair-software.eu)");
  CHECK(check_r5_checklist(fair, patterns).passed);
  CHECK_FALSE(check_r5_checklist(inventory_with_readme("# plain readme\n[![ci](https://github.com/x/y/badge.svg)]"), patterns).passed);
  CHECK_FALSE(check_r5_checklist(inventory_with_readme(""), patterns).passed);
  CHECK_FALSE(check_r5_checklist(FileInventory{}, patterns).passed);
  // Configurable patterns.
  auto custom = parse_badge_patterns("# comment\n\n  example.org/quality-badge  \n");
  REQUIRE(custom.patterns.size() == 1);
  CHECK(check_r5_checklist(inventory_with_readme("see EXAMPLE.org/quality-badge/1"), custom).passed);
  CHECK_FALSE(check_r5_checklist(best, custom).passed);
}

TEST_CASE("shipped badge data file matches the built-in list") {
  auto shipped = load_badge_patterns(data_file("checklist-badges.txt"));
  CHECK(shipped.patterns == default_badge_patterns().patterns);
}

TEST_CASE("assess_fairness tallies") {
  auto four = assess_fairness(results({true, true, true, true, false}));
  CHECK(four.raw_score == 4);
  CHECK(four.s_fair == 80.0);
  CHECK(assess_fairness(results({true, true, true, true, true})).s_fair == 100.0);
  auto zero = assess_fairness(results({false, false, false, false, false}));
  CHECK(zero.raw_score == 0);
  CHECK(zero.s_fair == 0.0);
}

TEST_CASE("assess_fairness is permutation invariant and indexes by recommendation") {
  auto base = results({true, false, true, false, true});
  auto expected = assess_fairness(base);
  std::array<int, 5> order{0, 1, 2, 3, 4};
  do {
    std::array<CheckResult, 5> shuffled;
    for (int i = 0; i < 5; ++i) shuffled[i] = base[order[i]];
    CHECK(assess_fairness(shuffled) == expected);
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(expected.checks[1].recommendation == Recommendation::R2);
  CHECK_FALSE(expected.checks[1].passed);
}

TEST_CASE("assess_fairness rejects duplicate, missing and evidence-free results") {
  auto dup = results({true, true, true, true, true});
  dup[4].recommendation = Recommendation::R1;
  CHECK_THROWS_AS(assess_fairness(dup), ValidationError);
  auto r = results({true, true, true, true, true});
  CHECK_THROWS_AS(assess_fairness(std::span<const CheckResult>(r.data(), 4)), ValidationError);
  auto bare = results({true, true, true, true, true});
  bare[2].evidence.clear();
  CHECK_THROWS_AS(assess_fairness(bare), ValidationError);
}

TEST_CASE("fairness ladder fixtures pass exactly N checks") {
  for (int n = 0; n <= 5; ++n) {
    CAPTURE(n);
    auto a = assess_ladder_fixture("pass" + std::to_string(n));
    CHECK(a.raw_score == n);
    CHECK(a.s_fair == 20.0 * n);
    for (const auto& c : a.checks)
      if (c.passed) CHECK_FALSE(c.evidence.empty());
  }
}

TEST_CASE("checks are pure") {
  CHECK(assess_ladder_fixture("pass3") == assess_ladder_fixture("pass3"));
}

TEST_CASE("registry DOIs found in text") {
  auto dois = find_registry_dois(
      "https://doi.org/10.5281/zenodo.111 and 10.5281/ZENODO.111 and 10.6084/m9.figshare.9 and 10.1/x");
  CHECK(dois == std::vector<std::string>{"10.5281/zenodo.111", "10.6084/m9.figshare.9"});
}
