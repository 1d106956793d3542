// Method fingerprints and the local reuse index.
//
// A method is abstracted (identifiers -> V1, V2, ... by first occurrence;
// literals -> LITNUM / LITSTR; keywords and operators kept) and the token
// stream, joined with 0x1F, is hashed with SHA-256.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairseco/methods.hpp"
#include "fairseco/model.hpp"

namespace fairseco {

/// Throws ParseError when the body cannot be tokenized.
std::vector<std::string> abstract_method(const MethodSpan& span);

/// 64 lowercase hex chars. Throws ValidationError on an empty sequence.
std::string fingerprint(std::span<const std::string> tokens);

struct MethodFingerprint {
  std::string hash;
  std::string method;
  std::string file;  // generic path relative to the project root
  int line = 1;
  std::string project;

  bool operator==(const MethodFingerprint&) const = default;
  auto operator<=>(const MethodFingerprint&) const = default;
};

/// Immutable multimap hash -> entries.
class ReuseIndex {
public:
  ReuseIndex() = default;
  /// Validates every entry (hash shape, line, project) and drops exact duplicates.
  explicit ReuseIndex(std::vector<MethodFingerprint> entries);

  std::span<const MethodFingerprint> lookup(std::string_view hash) const;
  std::span<const MethodFingerprint> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t project_count() const;

  /// One JSON object per line, keys in fixed order, entries sorted.
  std::string to_jsonl() const;
  static ReuseIndex from_jsonl(std::string_view text);
  static ReuseIndex load(const std::filesystem::path& file);
  void save(const std::filesystem::path& file) const;

  static ReuseIndex merge(const ReuseIndex& a, const ReuseIndex& b);

private:
  std::vector<MethodFingerprint> entries_;  // sorted
};

struct FingerprintedMethod {
  MethodSpan span;  // span.file relative to the project root
  MethodFingerprint fingerprint;
};

struct RepositoryFingerprints {
  std::vector<FingerprintedMethod> methods;
  std::vector<std::string> warnings;
};

/// Extracts and fingerprints every method in the inventory's source files.
RepositoryFingerprints fingerprint_repository(const FileInventory& inventory,
                                              const std::string& project_id);

struct ProjectSource {
  std::string project_id;
  std::filesystem::path root;
};

struct IndexBuild {
  ReuseIndex index;
  std::vector<std::string> errors;    // per-project failures
  std::vector<std::string> warnings;  // per-file skips
};

IndexBuild build_index(std::span<const ProjectSource> projects);

/// Each immediate subdirectory of `corpus_dir` is one project named after it.
std::vector<ProjectSource> corpus_projects(const std::filesystem::path& corpus_dir);

enum class ReuseDirection { ReusedByOthers, ReusingOthers, Undetermined };

std::string_view to_string(ReuseDirection d);
std::optional<ReuseDirection> reuse_direction_from_string(std::string_view s);

struct ReuseMatch {
  MethodFingerprint local;
  int local_end_line = 1;
  std::vector<MethodFingerprint> remote;  // sorted
  ReuseDirection direction = ReuseDirection::Undetermined;

  bool operator==(const ReuseMatch&) const = default;
};

struct ReuseReport {
  std::vector<ReuseMatch> matches;  // by local file, line
  std::uint64_t n_reuse_projects = 0;  // N_r

  bool operator==(const ReuseReport&) const = default;
};

/// Earliest known appearance of each project, keyed by project id.
using ProjectDates = std::map<std::string, Timestamp, std::less<>>;

/// Entries belonging to `self_project` never match. Direction is undetermined
/// unless `dates` covers the analyzed project and every remote project of a match.
ReuseReport match_repository(std::span<const FingerprintedMethod> local, const ReuseIndex& index,
                             std::string_view self_project,
                             const std::optional<ProjectDates>& dates = std::nullopt);

}  // namespace fairseco
