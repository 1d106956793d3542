#include "fairseco/license_audit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace fairseco {

namespace {

// Common SPDX license identifiers, including deprecated short forms still seen
// in package metadata.
constexpr std::array<std::string_view, 96> kSpdxIds{
    "0BSD", "AFL-3.0", "AGPL-1.0", "AGPL-3.0", "AGPL-3.0-only", "AGPL-3.0-or-later",
    "Apache-1.1", "Apache-2.0", "APSL-2.0", "Artistic-1.0", "Artistic-2.0", "BlueOak-1.0.0",
    "BSD-1-Clause", "BSD-2-Clause", "BSD-2-Clause-Patent", "BSD-3-Clause",
    "BSD-3-Clause-Clear", "BSD-4-Clause", "BSL-1.0", "BUSL-1.1", "CC-BY-3.0", "CC-BY-4.0",
    "CC-BY-NC-4.0", "CC-BY-NC-SA-4.0", "CC-BY-ND-4.0", "CC-BY-SA-3.0", "CC-BY-SA-4.0",
    "CC0-1.0", "CDDL-1.0", "CDDL-1.1", "CECILL-2.1", "CECILL-B", "CECILL-C",
    "Classpath-exception-2.0", "ECL-2.0", "EPL-1.0", "EPL-2.0", "EUPL-1.1", "EUPL-1.2",
    "GFDL-1.3-only", "GFDL-1.3-or-later", "GPL-1.0-or-later", "GPL-2.0", "GPL-2.0+",
    "GPL-2.0-only", "GPL-2.0-or-later", "GPL-3.0", "GPL-3.0+", "GPL-3.0-only",
    "GPL-3.0-or-later", "HPND", "ISC", "LGPL-2.0", "LGPL-2.0-only", "LGPL-2.0-or-later",
    "LGPL-2.1", "LGPL-2.1+", "LGPL-2.1-only", "LGPL-2.1-or-later", "LGPL-3.0", "LGPL-3.0+",
    "LGPL-3.0-only", "LGPL-3.0-or-later", "LLVM-exception", "LPPL-1.3c", "MIT", "MIT-0",
    "MIT-CMU", "MPL-1.1", "MPL-2.0", "MPL-2.0-no-copyleft-exception", "MS-PL", "MS-RL",
    "MulanPSL-2.0", "NCSA", "ODbL-1.0", "OFL-1.1", "OpenSSL", "OSL-3.0", "PHP-3.01",
    "PostgreSQL", "PSF-2.0", "Python-2.0", "Python-2.0.1", "Ruby", "SSPL-1.0",
    "Unicode-3.0", "Unicode-DFS-2016", "Unlicense", "UPL-1.0", "Vim", "W3C", "WTFPL",
    "X11", "Zlib", "ZPL-2.1"};

// Tokenizer and recursive-descent parser for SPDX license expressions.
// Grammar: or := and ("OR" and)* ; and := atom ("AND" atom)* ;
//          atom := "(" or ")" | id ["WITH" id]
class ExpressionParser {
public:
  explicit ExpressionParser(std::string_view text) {
    std::string cur;
    for (char c : text) {
      if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) tokens_.push_back(std::move(cur));
        cur.clear();
        if (c == '(' || c == ')') tokens_.emplace_back(1, c);
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tokens_.push_back(std::move(cur));
  }

  // Folds the expression with `leaf`, combining with `any` for OR and `all` for AND.
  template <class T, class Leaf, class Any, class All>
  std::optional<T> fold(Leaf leaf, Any any, All all) {
    pos_ = 0;
    auto v = parse_or<T>(leaf, any, all);
    if (!v || pos_ != tokens_.size()) return std::nullopt;
    return v;
  }

private:
  template <class T, class Leaf, class Any, class All>
  std::optional<T> parse_or(Leaf& leaf, Any& any, All& all) {
    auto lhs = parse_and<T>(leaf, any, all);
    while (lhs && pos_ < tokens_.size() && tokens_[pos_] == "OR") {
      ++pos_;
      auto rhs = parse_and<T>(leaf, any, all);
      if (!rhs) return std::nullopt;
      lhs = any(*lhs, *rhs);
    }
    return lhs;
  }

  template <class T, class Leaf, class Any, class All>
  std::optional<T> parse_and(Leaf& leaf, Any& any, All& all) {
    auto lhs = parse_atom<T>(leaf, any, all);
    while (lhs && pos_ < tokens_.size() && tokens_[pos_] == "AND") {
      ++pos_;
      auto rhs = parse_atom<T>(leaf, any, all);
      if (!rhs) return std::nullopt;
      lhs = all(*lhs, *rhs);
    }
    return lhs;
  }

  template <class T, class Leaf, class Any, class All>
  std::optional<T> parse_atom(Leaf& leaf, Any& any, All& all) {
    if (pos_ >= tokens_.size()) return std::nullopt;
    if (tokens_[pos_] == "(") {
      ++pos_;
      auto inner = parse_or<T>(leaf, any, all);
      if (!inner || pos_ >= tokens_.size() || tokens_[pos_] != ")") return std::nullopt;
      ++pos_;
      return inner;
    }
    const auto& id = tokens_[pos_];
    if (id == ")" || id == "AND" || id == "OR" || id == "WITH") return std::nullopt;
    ++pos_;
    std::optional<std::string> exception;
    if (pos_ < tokens_.size() && tokens_[pos_] == "WITH") {
      if (pos_ + 1 >= tokens_.size()) return std::nullopt;
      exception = tokens_[pos_ + 1];
      pos_ += 2;
    }
    return leaf(id, exception);
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

Verdict more_permissive(Verdict a, Verdict b) {
  if (a == Verdict::Compatible || b == Verdict::Compatible) return Verdict::Compatible;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Incompatible;
}

Verdict more_restrictive(Verdict a, Verdict b) {
  if (a == Verdict::Incompatible || b == Verdict::Incompatible) return Verdict::Incompatible;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Compatible;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string read_text_file(const std::filesystem::path& file, const char* what) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read {} {}", what, file.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

bool is_known_spdx_id(std::string_view id) {
  if (id.starts_with("LicenseRef-")) return id.size() > 11;
  return std::find(kSpdxIds.begin(), kSpdxIds.end(), id) != kSpdxIds.end();
}

bool is_known_license_expression(std::string_view expression) {
  auto ok = ExpressionParser(expression).fold<bool>(
      [](const std::string& id, const std::optional<std::string>& exc) {
        return is_known_spdx_id(id) && (!exc || is_known_spdx_id(*exc));
      },
      [](bool a, bool b) { return a && b; }, [](bool a, bool b) { return a && b; });
  return ok.value_or(false);
}

// ---- database --------------------------------------------------------------

LicenseDatabase LicenseDatabase::parse(std::string_view text) {
  LicenseDatabase db;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      cols.emplace_back(trim(std::string_view(line).substr(start, tab - start)));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 3 || cols[0].empty() || cols[1].empty() || cols[2].empty())
      throw ParseError(fmt::format("license db line {}: expected name<TAB>ecosystem<TAB>spdx-id",
                                   lineno));
    db.add(cols[0], cols[1], cols[2]);
  }
  return db;
}

LicenseDatabase LicenseDatabase::load(const std::filesystem::path& file) {
  return parse(read_text_file(file, "license database"));
}

void LicenseDatabase::add(std::string name, std::string eco, std::string license_id) {
  if (eco == ecosystem::kPython) name = normalize_python_name(name);
  entries_[{std::move(name), std::move(eco)}] = std::move(license_id);
}

std::optional<std::string> LicenseDatabase::lookup(std::string_view name,
                                                   std::string_view eco) const {
  std::string key = eco == ecosystem::kPython ? normalize_python_name(name) : std::string(name);
  auto it = entries_.find(std::make_pair(key, std::string(eco)));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<Dependency> resolve_licenses(std::vector<Dependency> deps, const LicenseDatabase& db) {
  for (auto& dep : deps) {
    auto id = db.lookup(dep.name, dep.ecosystem);
    dep.license_id = (id && is_known_license_expression(*id)) ? *id : std::string(kUnknownLicense);
  }
  return deps;
}

// ---- matrix ----------------------------------------------------------------

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Compatible: return "compatible";
    case Verdict::Incompatible: return "incompatible";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Verdict> verdict_from_string(std::string_view s) {
  if (s == "compatible") return Verdict::Compatible;
  if (s == "incompatible") return Verdict::Incompatible;
  if (s == "unknown") return Verdict::Unknown;
  return std::nullopt;
}

CompatibilityMatrix CompatibilityMatrix::parse_csv(std::string_view text) {
  const auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.emplace_back(trim(std::string_view(line).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };

  CompatibilityMatrix m;
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> outbound;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = split(line);
    if (outbound.empty()) {
      if (cells.size() < 2) throw ParseError("compatibility matrix header needs license columns");
      outbound.assign(cells.begin() + 1, cells.end());
      continue;
    }
    if (cells.size() != outbound.size() + 1)
      throw ParseError(fmt::format("compatibility matrix line {}: expected {} cells, got {}",
                                   lineno, outbound.size() + 1, cells.size()));
    for (std::size_t i = 0; i < outbound.size(); ++i) {
      const auto& cell = cells[i + 1];
      Verdict v;
      if (cell == "C") {
        v = Verdict::Compatible;
      } else if (cell == "I") {
        v = Verdict::Incompatible;
      } else if (cell == "U") {
        v = Verdict::Unknown;
      } else {
        throw ParseError(
            fmt::format("compatibility matrix line {}: bad cell '{}' (want C, I or U)", lineno, cell));
      }
      m.set(cells[0], outbound[i], v);
    }
  }
  if (outbound.empty()) throw ParseError("compatibility matrix is empty");
  return m;
}

CompatibilityMatrix CompatibilityMatrix::load(const std::filesystem::path& file) {
  return parse_csv(read_text_file(file, "compatibility matrix"));
}

void CompatibilityMatrix::set(std::string inbound, std::string outbound, Verdict verdict) {
  cells_[{std::move(inbound), std::move(outbound)}] = verdict;
}

Verdict CompatibilityMatrix::lookup(std::string_view inbound, std::string_view outbound) const {
  auto it = cells_.find(std::make_pair(std::string(inbound), std::string(outbound)));
  return it == cells_.end() ? Verdict::Unknown : it->second;
}

Verdict CompatibilityMatrix::evaluate(std::string_view inbound_expression,
                                      std::string_view outbound) const {
  auto v = ExpressionParser(inbound_expression)
               .fold<Verdict>(
                   [&](const std::string& id, const std::optional<std::string>& exc) {
                     if (exc) {
                       // An exact "X WITH Y" row takes precedence over the bare id.
                       const auto full = id + " WITH " + *exc;
                       const auto v = lookup(full, outbound);
                       if (v != Verdict::Unknown) return v;
                     }
                     return lookup(id, outbound);
                   },
                   more_permissive, more_restrictive);
  return v.value_or(Verdict::Unknown);
}

// ---- audit -----------------------------------------------------------------

LicenseAuditResult audit_compatibility(const std::optional<std::string>& root_license,
                                       std::span<const Dependency> deps,
                                       const CompatibilityMatrix& matrix) {
  LicenseAuditResult result;
  result.root_license = root_license;
  for (const auto& dep : deps) {
    LicenseFinding f;
    f.dependency = dep;
    const auto license = dep.license_id.value_or(std::string(kUnknownLicense));
    if (license == kUnknownLicense) {
      f.verdict = Verdict::Unknown;
      f.rationale = "license could not be resolved";
    } else if (!root_license) {
      f.verdict = Verdict::Unknown;
      f.rationale = fmt::format("{} cannot be checked: repository license undetermined", license);
    } else {
      f.verdict = matrix.evaluate(license, *root_license);
      switch (f.verdict) {
        case Verdict::Compatible:
          f.rationale = fmt::format("{} may be used in a {} project", license, *root_license);
          break;
        case Verdict::Incompatible:
          f.rationale = fmt::format("{} conflicts with the project license {}", license, *root_license);
          ++result.violated_count;
          break;
        case Verdict::Unknown:
          f.rationale = fmt::format("no matrix entry for {} under {}", license, *root_license);
          break;
      }
    }
    result.findings.push_back(std::move(f));
  }
  result.n_licenses = result.findings.size();
  result.fraction_ok = result.n_licenses == 0
                           ? 1.0
                           : static_cast<double>(result.n_licenses - result.violated_count) /
                                 static_cast<double>(result.n_licenses);
  return result;
}

double license_score(double fraction_ok, std::uint64_t n_licenses) {
  if (!(fraction_ok >= 0.0 && fraction_ok <= 1.0))
    throw ValidationError(fmt::format("license fraction F_l = {} is outside [0,1]", fraction_ok));
  if (n_licenses == 0) return 100.0;
  const double exponent = std::log2(1.0 + static_cast<double>(n_licenses));
  return std::pow(fraction_ok, exponent) * 100.0;
}

// ---- SBOM ------------------------------------------------------------------

SbomDocument generate_sbom(const RepositoryMetadata& metadata, std::vector<Dependency> deps,
                           std::optional<std::string> subject_version, Timestamp generated_at) {
  SbomDocument doc;
  doc.subject_name = metadata.owner.empty() ? metadata.title : metadata.owner + "/" + metadata.title;
  doc.subject_version = std::move(subject_version);
  std::sort(deps.begin(), deps.end(), component_less);
  doc.components = std::move(deps);
  doc.generated_at = generated_at;
  return doc;
}

}  // namespace fairseco
