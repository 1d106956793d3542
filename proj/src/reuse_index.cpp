#include "fairseco/reuse_index.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "fairseco/digest.hpp"
#include "fairseco/repo_ingest.hpp"
#include "fairseco/source_tokens.hpp"

namespace fairseco {

using nlohmann::ordered_json;

std::vector<std::string> abstract_method(const MethodSpan& span) {
  std::vector<std::string> out;
  std::unordered_map<std::string, std::size_t> ids;
  for (const Token& t : tokenize(span.body_text, span.language)) {
    switch (t.kind) {
      case TokenKind::Identifier: {
        auto [it, fresh] = ids.try_emplace(t.text, ids.size() + 1);
        out.push_back("V" + std::to_string(it->second));
        break;
      }
      case TokenKind::Number: out.emplace_back("LITNUM"); break;
      case TokenKind::String: out.emplace_back("LITSTR"); break;
      case TokenKind::Keyword:
      case TokenKind::Operator: out.push_back(t.text); break;
    }
  }
  return out;
}

std::string fingerprint(std::span<const std::string> tokens) {
  if (tokens.empty()) throw ValidationError("cannot fingerprint an empty token sequence");
  std::string joined;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) joined += '\x1f';
    joined += tokens[i];
  }
  return sha256_hex(joined);
}

// ---- index -----------------------------------------------------------------

namespace {

bool is_hash(std::string_view h) {
  return h.size() == 64 && std::all_of(h.begin(), h.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

void check_entry(const MethodFingerprint& e) {
  if (!is_hash(e.hash)) throw ValidationError(fmt::format("malformed fingerprint hash '{}'", e.hash));
  if (e.line < 1) throw ValidationError(fmt::format("fingerprint line must be positive (got {})", e.line));
  if (e.project.empty()) throw ValidationError("fingerprint project id is empty");
}

}  // namespace

ReuseIndex::ReuseIndex(std::vector<MethodFingerprint> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) check_entry(e);
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

std::span<const MethodFingerprint> ReuseIndex::lookup(std::string_view hash) const {
  auto lo = std::lower_bound(entries_.begin(), entries_.end(), hash,
                             [](const MethodFingerprint& e, std::string_view h) { return e.hash < h; });
  auto hi = std::upper_bound(lo, entries_.end(), hash,
                             [](std::string_view h, const MethodFingerprint& e) { return h < e.hash; });
  return {lo, hi};
}

std::size_t ReuseIndex::project_count() const {
  std::set<std::string_view> projects;
  for (const auto& e : entries_) projects.insert(e.project);
  return projects.size();
}

std::string ReuseIndex::to_jsonl() const {
  std::string out;
  for (const auto& e : entries_) {
    ordered_json j;
    j["hash"] = e.hash;
    j["project"] = e.project;
    j["method"] = e.method;
    j["file"] = e.file;
    j["line"] = e.line;
    out += j.dump();
    out += '\n';
  }
  return out;
}

ReuseIndex ReuseIndex::from_jsonl(std::string_view text) {
  std::vector<MethodFingerprint> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      MethodFingerprint e;
      e.hash = j.at("hash").get<std::string>();
      e.project = j.at("project").get<std::string>();
      e.method = j.at("method").get<std::string>();
      e.file = j.at("file").get<std::string>();
      e.line = j.at("line").get<int>();
      check_entry(e);
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(fmt::format("index line {}: {}", n, ex.what()));
    } catch (const ValidationError& ex) {
      throw ParseError(fmt::format("index line {}: {}", n, ex.what()));
    }
  }
  return ReuseIndex(std::move(entries));
}

ReuseIndex ReuseIndex::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read index file {}", file.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_jsonl(ss.str());
}

void ReuseIndex::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << to_jsonl();
  if (!out) throw Error(fmt::format("cannot write index file {}", file.string()));
}

ReuseIndex ReuseIndex::merge(const ReuseIndex& a, const ReuseIndex& b) {
  std::vector<MethodFingerprint> all(a.entries_.begin(), a.entries_.end());
  all.insert(all.end(), b.entries_.begin(), b.entries_.end());
  return ReuseIndex(std::move(all));
}

// ---- fingerprinting ----------------------------------------------------------

RepositoryFingerprints fingerprint_repository(const FileInventory& inventory,
                                              const std::string& project_id) {
  RepositoryFingerprints out;
  for (const auto& src : inventory.source_files) {
    auto extraction = extract_methods(inventory.root / src.path, src.language, src.path);
    for (auto& w : extraction.warnings) out.warnings.push_back(std::move(w));
    for (auto& span : extraction.methods) {
      try {
        const auto tokens = abstract_method(span);
        MethodFingerprint fp{fingerprint(tokens), span.name, span.file.generic_string(),
                             span.start_line, project_id};
        out.methods.push_back({std::move(span), std::move(fp)});
      } catch (const Error& e) {
        out.warnings.push_back(fmt::format("{}:{}: {}, skipped", span.file.generic_string(),
                                           span.start_line, e.what()));
      }
    }
  }
  return out;
}

IndexBuild build_index(std::span<const ProjectSource> projects) {
  struct Partial {
    std::vector<MethodFingerprint> entries;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
  };
  std::vector<std::future<Partial>> jobs;
  for (const auto& project : projects) {
    jobs.push_back(std::async(std::launch::async, [project] {
      Partial p;
      try {
        const auto inventory = scan_repository(project.root);
        auto fps = fingerprint_repository(inventory, project.project_id);
        for (auto& m : fps.methods) p.entries.push_back(std::move(m.fingerprint));
        for (auto& w : fps.warnings) p.warnings.push_back(project.project_id + ": " + w);
      } catch (const std::exception& e) {
        p.errors.push_back(fmt::format("{}: {}", project.project_id, e.what()));
      }
      return p;
    }));
  }
  IndexBuild build;
  std::vector<MethodFingerprint> all;
  for (auto& job : jobs) {
    auto p = job.get();
    all.insert(all.end(), p.entries.begin(), p.entries.end());
    build.errors.insert(build.errors.end(), p.errors.begin(), p.errors.end());
    build.warnings.insert(build.warnings.end(), p.warnings.begin(), p.warnings.end());
  }
  build.index = ReuseIndex(std::move(all));
  return build;
}

std::vector<ProjectSource> corpus_projects(const std::filesystem::path& corpus_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(corpus_dir, ec))
    throw Error(fmt::format("corpus directory {} is not readable", corpus_dir.string()));
  std::vector<ProjectSource> out;
  for (fs::directory_iterator it(corpus_dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_directory()) out.push_back({it->path().filename().string(), it->path()});
  }
  if (ec) throw Error(fmt::format("cannot list {}: {}", corpus_dir.string(), ec.message()));
  std::sort(out.begin(), out.end(),
            [](const ProjectSource& a, const ProjectSource& b) { return a.project_id < b.project_id; });
  return out;
}

// ---- matching ----------------------------------------------------------------

std::string_view to_string(ReuseDirection d) {
  switch (d) {
    case ReuseDirection::ReusedByOthers: return "reused-by-others";
    case ReuseDirection::ReusingOthers: return "reusing-others";
    case ReuseDirection::Undetermined: break;
  }
  return "undetermined";
}

std::optional<ReuseDirection> reuse_direction_from_string(std::string_view s) {
  for (auto d : {ReuseDirection::ReusedByOthers, ReuseDirection::ReusingOthers,
                 ReuseDirection::Undetermined})
    if (to_string(d) == s) return d;
  return std::nullopt;
}

namespace {

ReuseDirection direction_for(const std::vector<MethodFingerprint>& remote, std::string_view self,
                             const std::optional<ProjectDates>& dates) {
  if (!dates) return ReuseDirection::Undetermined;
  auto self_it = dates->find(self);
  if (self_it == dates->end()) return ReuseDirection::Undetermined;
  bool all_later = true, all_earlier = true;
  for (const auto& r : remote) {
    auto it = dates->find(r.project);
    if (it == dates->end()) return ReuseDirection::Undetermined;
    all_later = all_later && it->second > self_it->second;
    all_earlier = all_earlier && it->second < self_it->second;
  }
  if (all_later) return ReuseDirection::ReusedByOthers;
  if (all_earlier) return ReuseDirection::ReusingOthers;
  return ReuseDirection::Undetermined;
}

}  // namespace

ReuseReport match_repository(std::span<const FingerprintedMethod> local, const ReuseIndex& index,
                             std::string_view self_project,
                             const std::optional<ProjectDates>& dates) {
  ReuseReport report;
  std::set<std::string> projects;
  for (const auto& m : local) {
    std::vector<MethodFingerprint> remote;
    for (const auto& e : index.lookup(m.fingerprint.hash))
      if (e.project != self_project) remote.push_back(e);
    if (remote.empty()) continue;
    for (const auto& r : remote) projects.insert(r.project);
    ReuseMatch match;
    match.local = m.fingerprint;
    match.local_end_line = m.span.end_line;
    match.direction = direction_for(remote, self_project, dates);
    match.remote = std::move(remote);
    report.matches.push_back(std::move(match));
  }
  std::sort(report.matches.begin(), report.matches.end(),
            [](const ReuseMatch& a, const ReuseMatch& b) {
              return std::tie(a.local.file, a.local.line, a.local.method) <
                     std::tie(b.local.file, b.local.line, b.local.method);
            });
  report.n_reuse_projects = projects.size();
  return report;
}

}  // namespace fairseco
