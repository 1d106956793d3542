#include "fairseco/pipeline.hpp"

#include <spawn.h>
#include <sys/wait.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <future>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "fairseco/fairness.hpp"
#include "fairseco/forge_cache.hpp"
#include "fairseco/license_audit.hpp"
#include "fairseco/scoring.hpp"

extern char** environ;

namespace fairseco {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read {}", file.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// url of [remote "origin"] in .git/config
std::optional<std::string> origin_url(const fs::path& checkout) {
  std::ifstream in(checkout / ".git" / "config");
  if (!in) return std::nullopt;
  std::string line;
  bool in_origin = false;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.starts_with('[')) {
      in_origin = t == "[remote \"origin\"]";
      continue;
    }
    if (!in_origin) continue;
    const auto eq = t.find('=');
    if (eq != std::string::npos && trim(t.substr(0, eq)) == "url") return trim(t.substr(eq + 1));
  }
  return std::nullopt;
}

void git_clone(const std::string& url, const fs::path& dest) {
  std::error_code ec;
  fs::remove_all(dest, ec);
  std::vector<std::string> args = {"git", "clone", "--quiet", "--depth", "1", url, dest.string()};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  pid_t pid = 0;
  if (posix_spawnp(&pid, "git", nullptr, nullptr, argv.data(), environ) != 0)
    throw Error("cannot run git to clone the repository");
  int status = 0;
  if (waitpid(pid, &status, 0) < 0 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw Error(fmt::format("git clone of {} failed", url));
}

struct Target {
  RepositoryRef ref;
  fs::path checkout;
};

Target resolve_target(const RunConfig& cfg, std::vector<std::string>& warnings) {
  std::error_code ec;
  const fs::path as_path(cfg.target);
  if (fs::is_directory(as_path, ec)) {
    const auto root = fs::weakly_canonical(as_path);
    std::optional<RepositoryRef> coords;
    if (cfg.slug) {
      coords = parse_repository_url(*cfg.slug);
      if (!coords) throw ValidationError(fmt::format("--slug '{}' is not OWNER/NAME", *cfg.slug));
    } else if (auto url = origin_url(root)) {
      coords = parse_repository_url(*url);
    }
    if (coords)
      return {make_repository_ref(coords->forge_host, coords->owner, coords->name, root), root};
    warnings.push_back("no forge coordinates for the local checkout; forge metadata and issues skipped");
    return {make_repository_ref("", "local", root.filename().string(), root), root};
  }
  auto ref = parse_repository_url(cfg.target);
  if (!ref) throw Error(fmt::format("repository not found: '{}' is neither a directory nor a repository URL", cfg.target));
  if (cfg.offline) throw Error(fmt::format("{} has no local checkout and --offline forbids cloning", ref->slug()));
  const auto dest = cfg.out_dir / ".checkout";
  git_clone(ref->url(), dest);
  ref->local_path = fs::weakly_canonical(dest);
  return {*ref, *ref->local_path};
}

std::string describe(const std::exception& e) {
  if (const auto* f = dynamic_cast<const FetchError*>(&e)) {
    switch (f->kind()) {
      case FetchErrorKind::NotFound: return fmt::format("not found: {}", e.what());
      case FetchErrorKind::RateLimited:
        return f->retry_after() ? fmt::format("rate limited (retry after {}s): {}", f->retry_after()->count(), e.what())
                                : fmt::format("rate limited: {}", e.what());
      case FetchErrorKind::CacheMiss: return fmt::format("not in the offline cache: {}", e.what());
      case FetchErrorKind::Transport: break;
    }
  }
  return e.what();
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (cfg.target.empty()) throw ValidationError("no repository given");
  if (cfg.out_dir.empty()) throw ValidationError("output directory is empty");
  if (cfg.offline && !cfg.cache_dir) throw ValidationError("--offline requires --cache DIR");
}

ScoreWeights parse_weights_config(std::string_view text) {
  ScoreWeights w;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(fmt::format("weights line {}: expected 'key = number'", n));
    const auto key = trim(t.substr(0, eq));
    const auto value = trim(t.substr(eq + 1));
    double number = 0;
    try {
      std::size_t used = 0;
      number = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw ParseError(fmt::format("weights line {}: '{}' is not a number", n, value));
    }
    if (key == "w_fair") w.fair = number;
    else if (key == "w_license") w.license = number;
    else if (key == "w_maintainability") w.maintainability = number;
    else if (key == "w_documentation") w.documentation = number;
    else if (key == "w_citations") w.citations = number;
    else if (key == "w_reuse") w.reuse = number;
    else if (key == "w_quality") w.quality = number;
    else if (key == "impact_count_cap") {
      if (number < 0 || number != std::floor(number))
        throw ParseError(fmt::format("weights line {}: impact_count_cap must be a non-negative integer", n));
      w.impact_count_cap = static_cast<std::uint64_t>(number);
    } else {
      throw ParseError(fmt::format("weights line {}: unknown key '{}'", n, key));
    }
  }
  return validate_weights(w);
}

ScoreWeights load_weights_config(const fs::path& file) { return parse_weights_config(read_text(file)); }

fs::path data_file(std::string_view name) {
  if (const char* dir = std::getenv("FAIRSECO_DATA_DIR"); dir && *dir) return fs::path(dir) / name;
  return fs::path(FAIRSECO_DEFAULT_DATA_DIR) / name;
}

std::optional<std::string> detect_license_id(std::string_view text) {
  std::string head(text.substr(0, 2000));
  std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return std::tolower(c); });
  const auto has = [&](std::string_view s) { return head.find(s) != std::string::npos; };
  if (has("spdx-license-identifier:")) {
    static const std::regex id(R"(spdx-license-identifier:\s*([a-z0-9.+-]+))");
    std::smatch m;
    if (std::regex_search(head, m, id)) {
      // Recover the original casing from the source text.
      const auto pos = static_cast<std::size_t>(m.position(1));
      return std::string(text.substr(pos, static_cast<std::size_t>(m.length(1))));
    }
  }
  if (has("mit license") || has("permission is hereby granted, free of charge")) return "MIT";
  if (has("apache license") && has("version 2.0")) return "Apache-2.0";
  if (has("gnu lesser general public license")) return has("version 3") ? "LGPL-3.0-only" : "LGPL-2.1-only";
  if (has("gnu affero general public license")) return "AGPL-3.0-only";
  if (has("gnu general public license")) return has("version 3") ? "GPL-3.0-only" : "GPL-2.0-only";
  if (has("mozilla public license") && has("2.0")) return "MPL-2.0";
  if (has("redistribution and use in source and binary forms")) {
    return has("neither the name") || has("endorse or promote") ? "BSD-3-Clause" : "BSD-2-Clause";
  }
  if (has("isc license")) return "ISC";
  return std::nullopt;
}

AnalyzeResult run_analyze(const RunConfig& cfg) {
  validate_config(cfg);
  std::vector<std::string> warnings;
  const auto weights = cfg.weights_file ? load_weights_config(*cfg.weights_file) : validate_weights({});

  auto target = resolve_target(cfg, warnings);
  const auto& ref = target.ref;
  auto inventory = scan_repository(target.checkout);

  // Transport: injected or live upstream, behind the response cache when one is configured.
  std::unique_ptr<HttpTransport> live;
  HttpTransport* upstream = cfg.upstream;
  if (!upstream && !cfg.offline) {
    live = make_live_transport();
    upstream = live.get();
  }
  std::unique_ptr<ResponseCache> cache;
  std::unique_ptr<CachingTransport> caching;
  HttpTransport* transport = upstream;
  if (cfg.cache_dir) {
    std::error_code ec;
    fs::create_directories(*cfg.cache_dir, ec);
    cache = std::make_unique<ResponseCache>(*cfg.cache_dir);
    caching = std::make_unique<CachingTransport>(*cache, upstream, cfg.clock);
    transport = caching.get();
  }

  auto forge_options = cfg.forge;
  if (!forge_options.token) forge_options.token = token_from_env();

  // Local facts needed before the network stages.
  auto r4 = check_r4_citation(inventory);
  const auto doi = resolve_software_doi(r4.metadata, inventory.readme_text);

  std::future<RepositoryMetadata> metadata_job;
  std::future<IssueStats> issues_job;
  if (ref.has_forge()) {
    ForgeClient forge(*transport, forge_options, cfg.clock);
    metadata_job = std::async(std::launch::async, [forge, &ref] { return forge.fetch_repo_metadata(ref); });
    issues_job = std::async(std::launch::async, [forge, &ref] { return forge.fetch_issue_stats(ref); });
  }
  std::vector<std::future<std::vector<CitationRecord>>> catalog_jobs;
  CatalogClient catalogs(*transport, cfg.catalogs, cfg.clock);
  if (doi) {
    for (auto catalog : {Catalog::OpenAlex, Catalog::SemanticScholar})
      catalog_jobs.push_back(std::async(std::launch::async, [&catalogs, &doi, catalog] {
        return catalogs.fetch_citing_works(*doi, catalog);
      }));
  }

  RepositoryMetadata metadata;
  IssueStats issues;
  std::exception_ptr forge_failure;
  if (ref.has_forge()) {
    try {
      metadata = metadata_job.get();
    } catch (...) {
      forge_failure = std::current_exception();
    }
    try {
      issues = issues_job.get();
    } catch (...) {
      if (!forge_failure) forge_failure = std::current_exception();
    }
  } else {
    metadata.title = ref.name;
    metadata.owner = ref.owner;
    metadata.assessed_at = cfg.clock();
  }

  std::string citations_status{section_status::kAvailable};
  std::vector<std::vector<CitationRecord>> catalog_lists;
  if (!doi) {
    citations_status = section_status::kNotApplicable;
    warnings.push_back("no software DOI found; citations not harvested");
  }
  for (std::size_t i = 0; i < catalog_jobs.size(); ++i) {
    const auto catalog = i == 0 ? Catalog::OpenAlex : Catalog::SemanticScholar;
    try {
      catalog_lists.push_back(catalog_jobs[i].get());
    } catch (const std::exception& e) {
      citations_status = section_status::kUnavailable;
      warnings.push_back(fmt::format("citation catalog {} unavailable ({}); citations counted as 0",
                                     to_string(catalog), describe(e)));
    }
  }
  if (forge_failure) {
    try {
      std::rethrow_exception(forge_failure);
    } catch (const std::exception& e) {
      throw Error(fmt::format("cannot fetch {} from the forge: {}", ref.slug(), describe(e)));
    }
  }
  CitationSet citations;
  if (citations_status == section_status::kAvailable) citations = merge_citations(catalog_lists);

  // FAIRness.
  const auto patterns =
      load_badge_patterns(cfg.badge_patterns_file ? *cfg.badge_patterns_file : data_file("checklist-badges.txt"));
  const CheckResult checks[] = {check_r1_public(metadata, ref), check_r2_license(inventory, metadata),
                                check_r3_registry(inventory), r4.result, check_r5_checklist(inventory, patterns)};
  const auto fairness = assess_fairness(checks);

  // Licenses.
  const auto db = LicenseDatabase::load(cfg.license_db_file ? *cfg.license_db_file : data_file("license-db.tsv"));
  const auto matrix =
      CompatibilityMatrix::load(cfg.matrix_file ? *cfg.matrix_file : data_file("compatibility-matrix.csv"));
  auto extraction = extract_dependencies(inventory);
  for (const auto& w : extraction.warnings)
    warnings.push_back(fmt::format("{}: {}", w.file.generic_string(), w.message));
  const auto deps = resolve_licenses(std::move(extraction.dependencies), db);
  auto root_license = metadata.declared_license_id;
  if (!root_license && inventory.license_file) {
    root_license = detect_license_id(read_text(inventory.root / *inventory.license_file));
    if (!root_license) warnings.push_back("root license could not be identified; verdicts are unknown");
  }
  const auto audit = audit_compatibility(root_license, deps, matrix);

  // Reuse.
  std::string reuse_status{section_status::kAvailable};
  ReuseReport reuse;
  if (cfg.index_file) {
    const auto index = ReuseIndex::load(*cfg.index_file);
    auto local = fingerprint_repository(inventory, ref.name);
    for (const auto& w : local.warnings) warnings.push_back(w);
    reuse = match_repository(local.methods, index, ref.name);
  } else {
    reuse_status = section_status::kNotApplicable;
    warnings.push_back("no reuse index supplied; reuse counted as 0");
  }

  ScoreInputs inputs;
  inputs.s_fair = fairness.s_fair;
  inputs.s_license = license_score(audit.fraction_ok, audit.n_licenses);
  inputs.s_maintainability = maintainability_score(issues);
  inputs.s_documentation = documentation_score(inventory);
  inputs.n_citations = citations.n_citations;
  inputs.n_reuse_projects = reuse.n_reuse_projects;

  ReportInputs report_inputs;
  report_inputs.snapshot = RepositorySnapshot{ref, metadata, issues, inventory};
  report_inputs.citation_metadata = r4.metadata;
  report_inputs.fairness = fairness;
  report_inputs.license_audit = audit;
  report_inputs.software_doi = doi;
  report_inputs.citations_status = citations_status;
  report_inputs.citations = std::move(citations);
  report_inputs.reuse_status = reuse_status;
  report_inputs.reuse = std::move(reuse);
  report_inputs.scorecard = build_scorecard(inputs, weights);
  report_inputs.warnings = std::move(warnings);
  report_inputs.generated_at = cfg.clock();

  AnalyzeResult result;
  result.report = build_report(std::move(report_inputs));
  const auto history_file = cfg.out_dir / kHistoryFileName;
  // Refuse a corrupt or out-of-order history before any artifact is written.
  result.history = preview_history(result.report, history_file);
  result.written = write_artifacts(result.report, cfg.out_dir, &result.history);
  result.history = append_history(result.report, history_file);
  result.written.push_back(history_file);
  return result;
}

IndexBuild run_build_index(const fs::path& corpus_dir, const fs::path& index_file) {
  const auto projects = corpus_projects(corpus_dir);
  auto build = build_index(projects);
  if (index_file.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(index_file.parent_path(), ec);
  }
  write_file_atomic(index_file, build.index.to_jsonl());
  return build;
}

std::string run_history(const fs::path& out_dir) {
  const auto file = out_dir / kHistoryFileName;
  std::error_code ec;
  if (!fs::exists(file, ec)) throw Error(fmt::format("no history file at {}", file.string()));
  return format_history_table(load_history(file));
}

}  // namespace fairseco
