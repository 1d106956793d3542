// fairseco command-line entry point.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fairseco/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitUsage = 2;

void print_summary(const fairseco::AnalyzeResult& result) {
  using fairseco::display_percent;
  const auto& s = result.report.scorecard;
  fmt::print("{}\n", result.report.snapshot.ref.slug());
  fmt::print("  FAIRness         {:>4}%  ({} of 5)\n", display_percent(s.s_fair), result.report.fairness.raw_score);
  fmt::print("  License          {:>4}%\n", display_percent(s.s_license));
  fmt::print("  Maintainability  {:>4}%\n", display_percent(s.s_maintainability));
  fmt::print("  Documentation    {:>4}%\n", display_percent(s.s_documentation));
  fmt::print("  Quality          {:>4}%\n", display_percent(s.s_quality));
  fmt::print("  Impact           {:>4}%  (citations {}, reused in {} projects)\n", display_percent(s.s_impact),
             s.n_citations, s.n_reuse_projects);
  for (const auto& p : result.written) fmt::print("wrote {}\n", p.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Research-software quality and impact analysis", "fairseco"};
  app.set_version_flag("--version", std::string(FAIRSECO_VERSION));
  app.require_subcommand(1);

  fairseco::RunConfig config;
  std::string out_dir = "fairseco-out";
  std::string weights, matrix, license_db, index, cache, slug, badges;

  auto* analyze = app.add_subcommand("analyze", "Analyze a repository and write the report artifacts");
  analyze->add_option("repository", config.target, "Repository URL, OWNER/NAME, or local checkout")->required();
  analyze->add_option("--out", out_dir, "Output directory")->capture_default_str();
  analyze->add_option("--weights", weights, "Score weight configuration file");
  analyze->add_option("--matrix", matrix, "License compatibility matrix (CSV)");
  analyze->add_option("--license-db", license_db, "Package license database (TSV)");
  analyze->add_option("--index", index, "Reuse index (JSON lines)");
  analyze->add_option("--badges", badges, "Quality-checklist badge pattern file");
  analyze->add_option("--slug", slug, "OWNER/NAME on the forge for a local checkout");
  analyze->add_flag("--offline", config.offline, "Serve network requests only from --cache");
  analyze->add_option("--cache", cache, "Response cache directory");

  std::string corpus, index_out = "fairseco-index.jsonl";
  auto* build = app.add_subcommand("build-index", "Build a reuse index from a corpus of projects");
  build->add_option("corpus", corpus, "Directory with one subdirectory per project")->required();
  build->add_option("--index", index_out, "Index file to write")->capture_default_str();

  std::string history_dir;
  auto* history = app.add_subcommand("history", "Show the impact history of earlier runs");
  history->add_option("output-dir", history_dir, "Output directory of earlier analyze runs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) {
      config.out_dir = out_dir;
      if (!weights.empty()) config.weights_file = weights;
      if (!matrix.empty()) config.matrix_file = matrix;
      if (!license_db.empty()) config.license_db_file = license_db;
      if (!index.empty()) config.index_file = index;
      if (!badges.empty()) config.badge_patterns_file = badges;
      if (!cache.empty()) config.cache_dir = cache;
      if (!slug.empty()) config.slug = slug;
      try {
        fairseco::validate_config(config);
      } catch (const fairseco::ValidationError& e) {
        fmt::print(stderr, "fairseco: {}\n", e.what());
        return kExitUsage;
      }
      const auto result = fairseco::run_analyze(config);
      for (const auto& w : result.report.warnings) fmt::print(stderr, "warning: {}\n", w);
      print_summary(result);
    } else if (*build) {
      const auto result = fairseco::run_build_index(corpus, index_out);
      for (const auto& w : result.warnings) fmt::print(stderr, "warning: {}\n", w);
      for (const auto& e : result.errors) fmt::print(stderr, "error: {}\n", e);
      fmt::print("indexed {} methods from {} projects into {}\n", result.index.size(),
                 result.index.project_count(), index_out);
    } else if (*history) {
      fmt::print("{}", fairseco::run_history(history_dir));
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "fairseco: {}\n", e.what());
    return kExitFatal;
  }
  return kExitOk;
}
