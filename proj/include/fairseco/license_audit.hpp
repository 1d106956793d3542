// Dependency extraction, license resolution, SBOM assembly and the license
// compatibility audit.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairseco/model.hpp"

namespace fairseco {

inline constexpr std::string_view kUnknownLicense = "unknown";

namespace ecosystem {
inline constexpr std::string_view kPython = "python-package";
inline constexpr std::string_view kNode = "node-package";
inline constexpr std::string_view kCargo = "rust-crate-registry";
}  // namespace ecosystem

struct Dependency {
  std::string name;
  std::optional<std::string> version;  // pin or constraint string as declared
  std::string ecosystem;
  std::optional<std::string> license_id;
  bool direct = true;

  bool operator==(const Dependency&) const = default;
};

/// Sort order used by the SBOM: (ecosystem, name, version).
bool component_less(const Dependency& a, const Dependency& b);

// ---- manifests -------------------------------------------------------------

struct ManifestWarning {
  std::filesystem::path file;
  std::string message;

  bool operator==(const ManifestWarning&) const = default;
};

struct DependencyExtraction {
  std::vector<Dependency> dependencies;
  std::vector<ManifestWarning> warnings;
};

/// PEP 503 normalization: lowercase, runs of "-_." collapsed to "-".
std::string normalize_python_name(std::string_view name);

/// One PEP 508 requirement line; nullopt for blanks, comments and options.
std::optional<Dependency> parse_requirement_line(std::string_view line);

std::vector<Dependency> parse_requirements_txt(std::string_view text);
std::vector<Dependency> parse_pyproject_toml(std::string_view text);
std::vector<Dependency> parse_package_json(std::string_view text);
std::vector<Dependency> parse_cargo_toml(std::string_view text);
// Lockfiles yield the full resolved set with direct=false.
std::vector<Dependency> parse_package_lock(std::string_view text);
std::vector<Dependency> parse_cargo_lock(std::string_view text);
std::vector<Dependency> parse_poetry_lock(std::string_view text);

/// Parses every recognized manifest in the inventory and deduplicates on
/// (ecosystem, name); a direct declaration wins over a lockfile entry and
/// borrows the lockfile version when it declared none. Unrecognized or
/// unreadable manifests become warnings.
DependencyExtraction extract_dependencies(const FileInventory& inventory);

// ---- licenses --------------------------------------------------------------

bool is_known_spdx_id(std::string_view id);

/// Known ids and LicenseRef-*, combined with AND/OR/WITH and parentheses.
bool is_known_license_expression(std::string_view expression);

/// "name<TAB>ecosystem<TAB>spdx-id" lines, '#' comments.
class LicenseDatabase {
public:
  static LicenseDatabase parse(std::string_view text);
  /// Throws Error when the file is missing.
  static LicenseDatabase load(const std::filesystem::path& file);

  void add(std::string name, std::string ecosystem, std::string license_id);
  std::optional<std::string> lookup(std::string_view name, std::string_view ecosystem) const;
  std::size_t size() const { return entries_.size(); }

private:
  std::map<std::pair<std::string, std::string>, std::string, std::less<>> entries_;
};

/// Fills license_id from the database; absent or unrecognized ids become "unknown".
std::vector<Dependency> resolve_licenses(std::vector<Dependency> deps, const LicenseDatabase& db);

enum class Verdict { Compatible, Incompatible, Unknown };

std::string_view to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);

/// (inbound dependency license, outbound root license) -> verdict. CSV with a
/// header row of outbound ids and one row per inbound id; cells C/I/U.
class CompatibilityMatrix {
public:
  static CompatibilityMatrix parse_csv(std::string_view text);
  static CompatibilityMatrix load(const std::filesystem::path& file);

  void set(std::string inbound, std::string outbound, Verdict verdict);
  /// Undeclared pairs are Unknown.
  Verdict lookup(std::string_view inbound, std::string_view outbound) const;

  /// Evaluates an SPDX expression: OR takes the most permissive verdict, AND
  /// the most restrictive.
  Verdict evaluate(std::string_view inbound_expression, std::string_view outbound) const;

private:
  std::map<std::pair<std::string, std::string>, Verdict, std::less<>> cells_;
};

struct LicenseFinding {
  Dependency dependency;
  Verdict verdict = Verdict::Unknown;
  std::string rationale;

  bool operator==(const LicenseFinding&) const = default;
};

struct LicenseAuditResult {
  std::optional<std::string> root_license;
  std::vector<LicenseFinding> findings;
  std::uint64_t n_licenses = 0;      // N_l
  std::uint64_t violated_count = 0;
  double fraction_ok = 1.0;          // F_l

  bool operator==(const LicenseAuditResult&) const = default;
};

/// Only Incompatible counts as a violation; unknown licenses dilute N_l.
LicenseAuditResult audit_compatibility(const std::optional<std::string>& root_license,
                                       std::span<const Dependency> deps,
                                       const CompatibilityMatrix& matrix);

/// F_l ^ log2(1 + N_l) * 100, with exactly 100 at N_l = 0.
double license_score(double fraction_ok, std::uint64_t n_licenses);

// ---- SBOM ------------------------------------------------------------------

struct SbomDocument {
  std::string subject_name;
  std::optional<std::string> subject_version;
  std::vector<Dependency> components;  // sorted by component_less
  Timestamp generated_at{};
  std::string tool_name = "fairseco";
  std::string tool_version = FAIRSECO_VERSION;

  bool operator==(const SbomDocument&) const = default;
};

SbomDocument generate_sbom(const RepositoryMetadata& metadata, std::vector<Dependency> deps,
                           std::optional<std::string> subject_version, Timestamp generated_at);

}  // namespace fairseco
