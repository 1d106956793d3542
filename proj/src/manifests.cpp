#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "fairseco/license_audit.hpp"
#include "fairseco/toml_lite.hpp"

namespace fairseco {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
}

std::optional<std::string> json_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

bool component_less(const Dependency& a, const Dependency& b) {
  return std::tie(a.ecosystem, a.name, a.version) < std::tie(b.ecosystem, b.name, b.version);
}

std::string normalize_python_name(std::string_view name) {
  std::string out;
  bool in_sep = false;
  for (char c : name) {
    if (c == '-' || c == '_' || c == '.') {
      if (!in_sep) out.push_back('-');
      in_sep = true;
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      in_sep = false;
    }
  }
  return out;
}

std::optional<Dependency> parse_requirement_line(std::string_view raw) {
  std::string_view line = raw;
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  line = trim(line);
  if (line.empty() || line.front() == '-' || line.front() == '.' || line.front() == '/' ||
      (line.find("://") != std::string_view::npos && line.find('@') == std::string_view::npos))
    return std::nullopt;
  if (auto semi = line.find(';'); semi != std::string_view::npos) line = trim(line.substr(0, semi));

  std::size_t i = 0;
  while (i < line.size() && is_name_char(line[i])) ++i;
  if (i == 0) return std::nullopt;
  Dependency dep;
  dep.name = normalize_python_name(line.substr(0, i));
  dep.ecosystem = std::string(ecosystem::kPython);
  std::string_view rest = trim(line.substr(i));
  if (!rest.empty() && rest.front() == '[') {
    const auto close = rest.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    rest = trim(rest.substr(close + 1));
  }
  if (!rest.empty() && rest.front() == '@') return dep;  // direct URL reference
  if (!rest.empty() && rest.front() == '(' && rest.back() == ')')
    rest = trim(rest.substr(1, rest.size() - 2));
  if (!rest.empty()) {
    std::string spec;
    for (char c : rest)
      if (!std::isspace(static_cast<unsigned char>(c))) spec.push_back(c);
    if (spec.starts_with("==") && spec.find(',') == std::string::npos &&
        !spec.starts_with("==="))
      spec.erase(0, 2);
    dep.version = spec;
  }
  return dep;
}

std::vector<Dependency> parse_requirements_txt(std::string_view text) {
  std::vector<Dependency> out;
  std::istringstream in{std::string(text)};
  std::string line, logical;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.back() == '\\') {
      logical += line.substr(0, line.size() - 1);
      continue;
    }
    logical += line;
    if (auto dep = parse_requirement_line(logical)) out.push_back(std::move(*dep));
    logical.clear();
  }
  if (!logical.empty())
    if (auto dep = parse_requirement_line(logical)) out.push_back(std::move(*dep));
  return out;
}

std::vector<Dependency> parse_pyproject_toml(std::string_view text) {
  const json doc = parse_toml(text);
  std::vector<Dependency> out;
  if (auto project = doc.find("project"); project != doc.end() && project->is_object()) {
    if (auto deps = project->find("dependencies"); deps != project->end() && deps->is_array()) {
      for (const auto& d : *deps) {
        if (!d.is_string()) throw ParseError("pyproject.toml project.dependencies must be strings");
        if (auto dep = parse_requirement_line(d.get<std::string>())) out.push_back(std::move(*dep));
      }
    }
  }
  const auto poetry = doc.value(json::json_pointer("/tool/poetry/dependencies"), json::object());
  for (const auto& [name, spec] : poetry.items()) {
    if (normalize_python_name(name) == "python") continue;
    Dependency dep;
    dep.name = normalize_python_name(name);
    dep.ecosystem = std::string(ecosystem::kPython);
    if (spec.is_string()) {
      dep.version = spec.get<std::string>();
    } else if (spec.is_object()) {
      dep.version = json_string(spec, "version");
    }
    out.push_back(std::move(dep));
  }
  return out;
}

std::vector<Dependency> parse_package_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("package.json: {}", e.what()));
  }
  std::vector<Dependency> out;
  if (!doc.is_object()) throw ParseError("package.json: top level is not an object");
  if (auto deps = doc.find("dependencies"); deps != doc.end() && deps->is_object()) {
    for (const auto& [name, spec] : deps->items()) {
      Dependency dep;
      dep.name = name;
      dep.ecosystem = std::string(ecosystem::kNode);
      if (spec.is_string()) dep.version = spec.get<std::string>();
      out.push_back(std::move(dep));
    }
  }
  return out;
}

std::vector<Dependency> parse_cargo_toml(std::string_view text) {
  const json doc = parse_toml(text);
  std::vector<Dependency> out;
  auto deps = doc.find("dependencies");
  if (deps == doc.end() || !deps->is_object()) return out;
  for (const auto& [key, spec] : deps->items()) {
    Dependency dep;
    dep.name = key;
    dep.ecosystem = std::string(ecosystem::kCargo);
    if (spec.is_string()) {
      dep.version = spec.get<std::string>();
    } else if (spec.is_object()) {
      if (spec.contains("path") && !spec.contains("version")) continue;  // local crate
      dep.version = json_string(spec, "version");
      if (auto renamed = json_string(spec, "package")) dep.name = *renamed;
    }
    out.push_back(std::move(dep));
  }
  return out;
}

std::vector<Dependency> parse_package_lock(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("package-lock.json: {}", e.what()));
  }
  std::vector<Dependency> out;
  const auto add = [&](std::string name, const json& entry) {
    if (entry.value("link", false)) return;
    Dependency dep;
    dep.name = std::move(name);
    dep.ecosystem = std::string(ecosystem::kNode);
    dep.version = json_string(entry, "version");
    dep.direct = false;
    out.push_back(std::move(dep));
  };
  if (auto packages = doc.find("packages"); packages != doc.end() && packages->is_object()) {
    for (const auto& [key, entry] : packages->items()) {
      const auto pos = key.rfind("node_modules/");
      if (key.empty() || pos == std::string::npos) continue;  // the root package
      add(key.substr(pos + 13), entry);
    }
    return out;
  }
  // lockfileVersion 1: nested "dependencies" maps.
  const auto walk = [&](const auto& self, const json& deps) -> void {
    for (const auto& [name, entry] : deps.items()) {
      add(name, entry);
      if (auto nested = entry.find("dependencies"); nested != entry.end() && nested->is_object())
        self(self, *nested);
    }
  };
  if (auto deps = doc.find("dependencies"); deps != doc.end() && deps->is_object()) walk(walk, *deps);
  return out;
}

namespace {

std::vector<Dependency> parse_lock_packages(std::string_view text, std::string_view eco,
                                            bool require_source) {
  const json doc = parse_toml(text);
  std::vector<Dependency> out;
  auto packages = doc.find("package");
  if (packages == doc.end() || !packages->is_array()) return out;
  for (const auto& p : *packages) {
    auto name = json_string(p, "name");
    if (!name) throw ParseError("lockfile package entry without a name");
    if (require_source && !p.contains("source")) continue;  // workspace member
    Dependency dep;
    dep.name = eco == ecosystem::kPython ? normalize_python_name(*name) : *name;
    dep.ecosystem = std::string(eco);
    dep.version = json_string(p, "version");
    dep.direct = false;
    out.push_back(std::move(dep));
  }
  return out;
}

}  // namespace

std::vector<Dependency> parse_cargo_lock(std::string_view text) {
  return parse_lock_packages(text, ecosystem::kCargo, true);
}

std::vector<Dependency> parse_poetry_lock(std::string_view text) {
  return parse_lock_packages(text, ecosystem::kPython, false);
}

DependencyExtraction extract_dependencies(const FileInventory& inventory) {
  using Parser = std::vector<Dependency> (*)(std::string_view);
  static const std::map<std::string, Parser, std::less<>> kParsers{
      {"requirements.txt", &parse_requirements_txt}, {"pyproject.toml", &parse_pyproject_toml},
      {"package.json", &parse_package_json},         {"Cargo.toml", &parse_cargo_toml},
      {"package-lock.json", &parse_package_lock},    {"Cargo.lock", &parse_cargo_lock},
      {"poetry.lock", &parse_poetry_lock},
  };

  DependencyExtraction result;
  std::vector<Dependency> direct, transitive;
  for (const auto& rel : inventory.manifest_files) {
    const auto parser = kParsers.find(rel.filename().string());
    if (parser == kParsers.end()) {
      result.warnings.push_back({rel, "unrecognized manifest format, skipped"});
      continue;
    }
    std::ifstream in(inventory.root / rel, std::ios::binary);
    if (!in) {
      result.warnings.push_back({rel, "manifest unreadable, skipped"});
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      for (auto& dep : parser->second(ss.str()))
        (dep.direct ? direct : transitive).push_back(std::move(dep));
    } catch (const Error& e) {
      result.warnings.push_back({rel, std::string("manifest unparsable, skipped: ") + e.what()});
    }
  }

  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (auto& dep : direct) {
    auto key = std::make_pair(dep.ecosystem, dep.name);
    if (index.contains(key)) continue;
    index.emplace(std::move(key), result.dependencies.size());
    result.dependencies.push_back(std::move(dep));
  }
  for (auto& dep : transitive) {
    auto key = std::make_pair(dep.ecosystem, dep.name);
    if (auto it = index.find(key); it != index.end()) {
      auto& existing = result.dependencies[it->second];
      if (!existing.version) existing.version = dep.version;
      continue;
    }
    index.emplace(std::move(key), result.dependencies.size());
    result.dependencies.push_back(std::move(dep));
  }
  return result;
}

}  // namespace fairseco
