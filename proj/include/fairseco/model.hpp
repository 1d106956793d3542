// Domain types shared by every analysis stage. Plain value objects, no I/O.

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairseco {

using Timestamp = std::chrono::sys_seconds;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input rejected by a constructor or operation precondition.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A document (CFF, manifest, index, history, ...) could not be parsed.
class ParseError : public Error {
public:
  using Error::Error;
};

struct RepositoryRef {
  std::string forge_host;  // empty for a local-only analysis
  std::string owner;
  std::string name;
  std::optional<std::filesystem::path> local_path;

  bool has_forge() const { return !forge_host.empty(); }
  std::string slug() const { return owner + "/" + name; }
  std::string url() const;

  bool operator==(const RepositoryRef&) const = default;
};

/// Checks the RepositoryRef invariants; throws ValidationError.
RepositoryRef make_repository_ref(std::string forge_host, std::string owner, std::string name,
                                  std::optional<std::filesystem::path> local_path);

/// Accepts "https://github.com/o/n(.git)", "git@github.com:o/n.git" or "o/n".
std::optional<RepositoryRef> parse_repository_url(std::string_view text);

struct RepositoryMetadata {
  std::string title;
  std::string owner;
  std::uint64_t stars = 0;
  std::uint64_t watchers = 0;
  std::uint64_t forks = 0;
  std::string default_branch;
  std::optional<std::string> declared_license_id;
  bool is_public = false;
  Timestamp assessed_at{};

  bool operator==(const RepositoryMetadata&) const = default;
};

struct IssueStats {
  std::uint64_t total = 0;   // N_i
  std::uint64_t closed = 0;  // C_i

  bool operator==(const IssueStats&) const = default;
};

IssueStats make_issue_stats(std::uint64_t total, std::uint64_t closed);

struct SourceFile {
  std::filesystem::path path;  // relative to the repository root
  std::string language;

  bool operator==(const SourceFile&) const = default;
};

struct FileInventory {
  std::filesystem::path root;
  bool has_readme = false;
  std::optional<std::filesystem::path> readme_file;
  std::optional<std::string> readme_text;
  bool has_docs_dir = false;
  std::optional<std::filesystem::path> license_file;
  std::optional<std::filesystem::path> citation_file;
  std::optional<std::string> citation_text;
  bool has_zenodo_json = false;
  std::vector<std::filesystem::path> manifest_files;  // relative, sorted
  std::vector<SourceFile> source_files;               // relative, sorted

  bool operator==(const FileInventory&) const = default;
};

enum class Recommendation { R1 = 1, R2, R3, R4, R5 };

std::string_view to_string(Recommendation r);
std::optional<Recommendation> recommendation_from_string(std::string_view s);

struct CheckResult {
  Recommendation recommendation = Recommendation::R1;
  bool passed = false;
  std::vector<std::string> evidence;

  bool operator==(const CheckResult&) const = default;
};

struct FairnessAssessment {
  std::array<CheckResult, 5> checks;  // indexed R1..R5
  int raw_score = 0;
  double s_fair = 0.0;

  bool operator==(const FairnessAssessment&) const = default;
};

/// Weights for the quality (fair, license, maintainability, documentation)
/// and impact (citations, reuse, quality) composites.
struct ScoreWeights {
  double fair = 3.0;
  double license = 2.0;
  double maintainability = 2.0;
  double documentation = 1.0;
  double citations = 1.0;
  double reuse = 1.0;
  double quality = 1.0;
  // Caps N_c and N_r before they enter the impact composite. Off by default.
  std::optional<std::uint64_t> impact_count_cap;

  double quality_total() const { return fair + license + maintainability + documentation; }
  double impact_total() const { return citations + reuse + quality; }

  bool operator==(const ScoreWeights&) const = default;
};

/// Returns the weights unchanged or throws ValidationError naming the field.
ScoreWeights validate_weights(const ScoreWeights& weights);

struct ScoreCard {
  double s_fair = 0.0;
  double s_license = 0.0;
  double s_maintainability = 0.0;
  double s_documentation = 0.0;
  double s_quality = 0.0;
  double s_impact = 0.0;       // clamped to [0,100]
  double s_impact_raw = 0.0;   // unclamped weighted combination
  std::uint64_t n_citations = 0;
  std::uint64_t n_reuse_projects = 0;
  ScoreWeights weights;

  bool operator==(const ScoreCard&) const = default;
};

/// Range check for every score field; throws ValidationError.
void validate_scorecard(const ScoreCard& card);

struct RepositorySnapshot {
  RepositoryRef ref;
  RepositoryMetadata metadata;
  IssueStats issues;
  FileInventory inventory;

  bool operator==(const RepositorySnapshot&) const = default;
};

/// Half-up rounding used when a 0-100 score is shown as an integer percent.
int display_percent(double score);

}  // namespace fairseco
