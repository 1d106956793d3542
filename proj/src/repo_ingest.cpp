#include "fairseco/repo_ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace fairseco {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::uint64_t count_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) return 0;
  const auto v = it->get<std::int64_t>();
  return v < 0 ? 0 : static_cast<std::uint64_t>(v);
}

}  // namespace

std::optional<std::string> token_from_env() {
  const char* token = std::getenv("GITHUB_TOKEN");
  if (!token || !*token) return std::nullopt;
  return std::string(token);
}

std::string api_base_for(const RepositoryRef& ref) {
  if (ref.forge_host == "github.com" || ref.forge_host == "www.github.com")
    return "https://api.github.com";
  return fmt::format("https://{}/api/v3", ref.forge_host);
}

ForgeClient::ForgeClient(HttpTransport& transport, ForgeClientOptions options, Clock clock)
    : transport_(transport), options_(std::move(options)), clock_(std::move(clock)) {}

std::string ForgeClient::repo_url(const RepositoryRef& ref) const {
  const auto base = options_.api_base.value_or(api_base_for(ref));
  return fmt::format("{}/repos/{}/{}", base, ref.owner, ref.name);
}

std::string ForgeClient::issue_search_url(const RepositoryRef& ref, bool closed_only) const {
  const auto base = options_.api_base.value_or(api_base_for(ref));
  std::string query = fmt::format("repo:{}/{} type:issue", ref.owner, ref.name);
  if (closed_only) query += " state:closed";
  return fmt::format("{}/search/issues?q={}&per_page=1", base, url_encode(query));
}

std::string ForgeClient::get_json_body(const std::string& url, const RepositoryRef& ref) const {
  if (!ref.has_forge())
    throw ValidationError("repository " + ref.slug() + " has no forge coordinates");
  HeaderList headers{{"Accept", "application/vnd.github+json"},
                     {"X-GitHub-Api-Version", "2022-11-28"}};
  if (options_.token) headers.emplace_back("Authorization", "Bearer " + *options_.token);
  const HttpResponse response = transport_.get(url, headers);
  throw_if_rate_limited(response, url, clock_());
  if (response.status == 404 || response.status == 401)
    throw FetchError(FetchErrorKind::NotFound,
                     fmt::format("repository {} not found (or private without token)", ref.slug()));
  if (response.status != 200)
    throw FetchError(FetchErrorKind::Transport,
                     fmt::format("GET {} returned HTTP {}", url, response.status));
  return response.body;
}

RepositoryMetadata ForgeClient::fetch_repo_metadata(const RepositoryRef& ref) const {
  const auto url = repo_url(ref);
  json doc;
  try {
    doc = json::parse(get_json_body(url, ref));
  } catch (const json::exception& e) {
    throw FetchError(FetchErrorKind::Transport, fmt::format("bad JSON from {}: {}", url, e.what()));
  }
  RepositoryMetadata meta;
  meta.title = doc.value("name", ref.name);
  if (auto owner = doc.find("owner"); owner != doc.end() && owner->is_object())
    meta.owner = owner->value("login", ref.owner);
  else
    meta.owner = ref.owner;
  meta.stars = count_field(doc, "stargazers_count");
  // watchers_count mirrors stars in the v3 API; subscribers are the real watchers.
  meta.watchers = doc.contains("subscribers_count") ? count_field(doc, "subscribers_count")
                                                    : count_field(doc, "watchers_count");
  meta.forks = count_field(doc, "forks_count");
  meta.default_branch = doc.value("default_branch", "");
  if (auto lic = doc.find("license"); lic != doc.end() && lic->is_object()) {
    const auto id = lic->value("spdx_id", "");
    if (!id.empty() && id != "NOASSERTION") meta.declared_license_id = id;
  }
  const bool is_private = doc.value("private", false);
  meta.is_public = !is_private && doc.value("visibility", "public") == "public";
  meta.assessed_at = clock_();
  return meta;
}

IssueStats ForgeClient::fetch_issue_stats(const RepositoryRef& ref) const {
  const auto total_of = [&](bool closed) {
    const auto url = issue_search_url(ref, closed);
    try {
      return count_field(json::parse(get_json_body(url, ref)), "total_count");
    } catch (const json::exception& e) {
      throw FetchError(FetchErrorKind::Transport,
                       fmt::format("bad JSON from {}: {}", url, e.what()));
    }
  };
  const auto total = total_of(false);
  const auto closed = total_of(true);
  // The two searches are not atomic; a close between them can skew by one.
  return make_issue_stats(total, std::min(closed, total));
}

std::optional<std::string> language_for_path(const fs::path& path) {
  static const std::array<std::pair<const char*, const char*>, 19> kMap{{
      {".py", "python"},      {".c", "c"},         {".h", "c"},
      {".cc", "cpp"},         {".cpp", "cpp"},     {".cxx", "cpp"},
      {".hpp", "cpp"},        {".hh", "cpp"},      {".hxx", "cpp"},
      {".java", "java"},      {".js", "javascript"}, {".mjs", "javascript"},
      {".cjs", "javascript"}, {".ts", "typescript"}, {".cs", "csharp"},
      {".go", "go"},          {".rs", "rust"},     {".kt", "kotlin"},
      {".cu", "cpp"},
  }};
  const auto ext = lower(path.extension().string());
  for (const auto& [e, lang] : kMap)
    if (ext == e) return std::string(lang);
  return std::nullopt;
}

bool is_manifest_name(const std::string& name) {
  static const std::array<const char*, 20> kNames{
      "requirements.txt", "pyproject.toml", "package.json",   "Cargo.toml",
      "package-lock.json", "Cargo.lock",    "poetry.lock",    "setup.py",
      "setup.cfg",        "Pipfile",        "Pipfile.lock",   "go.mod",
      "pom.xml",          "build.gradle",   "Gemfile",        "environment.yml",
      "conanfile.txt",    "vcpkg.json",     "yarn.lock",      "composer.json"};
  return std::find(kNames.begin(), kNames.end(), name) != kNames.end();
}

namespace {

bool is_vcs_dir(const std::string& name) {
  return name == ".git" || name == ".hg" || name == ".svn" || name == ".bzr" || name == "CVS";
}

bool inside(const fs::path& root, const fs::path& candidate) {
  const auto rel = candidate.lexically_relative(root);
  return !rel.empty() && *rel.begin() != "..";
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FileInventory scan_repository(const fs::path& root_in) {
  std::error_code ec;
  if (!fs::is_directory(root_in, ec))
    throw Error("unreadable repository path: " + root_in.string());
  const fs::path root = fs::canonical(root_in, ec);
  if (ec) throw Error("unreadable repository path: " + root_in.string());

  FileInventory inv;
  inv.root = root;

  // Symlinks are followed only when they resolve within the checkout.
  const auto resolves_inside = [&](const fs::directory_entry& e) {
    if (!e.is_symlink()) return true;
    std::error_code ec2;
    const auto target = fs::canonical(e.path(), ec2);
    return !ec2 && inside(root, target);
  };

  std::vector<fs::directory_entry> top;
  for (const auto& e : fs::directory_iterator(root, fs::directory_options::skip_permission_denied, ec))
    top.push_back(e);
  if (ec) throw Error("unreadable repository path: " + root_in.string());
  std::sort(top.begin(), top.end(),
            [](const auto& a, const auto& b) { return a.path().filename() < b.path().filename(); });

  for (const auto& e : top) {
    if (!resolves_inside(e)) continue;
    const auto name = e.path().filename().string();
    const auto stem = lower(e.path().stem().string());
    std::error_code ec2;
    if (e.is_directory(ec2)) {
      const auto lname = lower(name);
      if (lname == "docs" || lname == "doc" || lname == "documentation") inv.has_docs_dir = true;
      continue;
    }
    if (!e.is_regular_file(ec2)) continue;
    if (stem == "readme" && !inv.has_readme) {
      inv.has_readme = true;
      inv.readme_file = fs::path(name);
      inv.readme_text = read_file(e.path());
    }
    if ((stem == "license" || stem == "copying") && !inv.license_file)
      inv.license_file = fs::path(name);
    if (name == "CITATION.cff") {
      inv.citation_file = fs::path(name);
      inv.citation_text = read_file(e.path());
    }
    if (name == ".zenodo.json") inv.has_zenodo_json = true;
  }

  // Recursive part. Directory symlinks are not traversed by the iterator.
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw Error("unreadable repository path: " + root_in.string());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    const auto& e = *it;
    const auto name = e.path().filename().string();
    std::error_code ec2;
    if (e.is_directory(ec2) && !e.is_symlink()) {
      if (is_vcs_dir(name)) it.disable_recursion_pending();
      continue;
    }
    if (!resolves_inside(e) || !e.is_regular_file(ec2)) continue;
    const auto rel = e.path().lexically_relative(root);
    if (is_manifest_name(name)) inv.manifest_files.push_back(rel);
    if (auto lang = language_for_path(rel)) inv.source_files.push_back({rel, *lang});
  }
  std::sort(inv.manifest_files.begin(), inv.manifest_files.end());
  std::sort(inv.source_files.begin(), inv.source_files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  return inv;
}

}  // namespace fairseco
