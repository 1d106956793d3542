// Repository facts: forge metadata and issue counts over the v3 REST API, and
// a file inventory from a local checkout.

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "fairseco/http.hpp"
#include "fairseco/model.hpp"
#include "fairseco/timeutil.hpp"

namespace fairseco {

struct ForgeClientOptions {
  /// Overrides the API root derived from the forge host.
  std::optional<std::string> api_base;
  std::optional<std::string> token;
};

/// GITHUB_TOKEN, when set and non-empty.
std::optional<std::string> token_from_env();

/// "https://api.github.com" for github.com, "https://<host>/api/v3" otherwise.
std::string api_base_for(const RepositoryRef& ref);

class ForgeClient {
public:
  ForgeClient(HttpTransport& transport, ForgeClientOptions options, Clock clock);

  RepositoryMetadata fetch_repo_metadata(const RepositoryRef& ref) const;

  /// Lifetime counts; pull requests are excluded by the issue-search query.
  IssueStats fetch_issue_stats(const RepositoryRef& ref) const;

  std::string repo_url(const RepositoryRef& ref) const;
  std::string issue_search_url(const RepositoryRef& ref, bool closed_only) const;

private:
  std::string get_json_body(const std::string& url, const RepositoryRef& ref) const;

  HttpTransport& transport_;
  ForgeClientOptions options_;
  Clock clock_;
};

/// Language tag for a source file extension ("python", "cpp", ...), if supported.
std::optional<std::string> language_for_path(const std::filesystem::path& path);

/// True for manifest and lockfile names the scanner collects.
bool is_manifest_name(const std::string& file_name);

/// Walks a checkout. Root-level rules decide README/docs/license/citation;
/// manifests and sources are collected recursively, skipping VCS metadata and
/// any symlink that resolves outside the root.
FileInventory scan_repository(const std::filesystem::path& root);

}  // namespace fairseco
