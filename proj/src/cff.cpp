#include "fairseco/cff.hpp"

#include <cctype>
#include <regex>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "fairseco/model.hpp"
#include "fairseco/timeutil.hpp"

namespace fairseco {

bool is_valid_doi(std::string_view doi) {
  static const std::regex kDoi(R"(^10\.[0-9]{4,9}(\.[0-9]+)*/\S+$)");
  return std::regex_match(doi.begin(), doi.end(), kDoi);
}

std::string normalize_doi(std::string_view doi) {
  std::string s(doi);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (std::string_view prefix : {"https://doi.org/", "http://doi.org/", "https://dx.doi.org/",
                                  "http://dx.doi.org/", "doi.org/", "doi:"}) {
    if (std::string_view(s).starts_with(prefix)) {
      s.erase(0, prefix.size());
      break;
    }
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

namespace {

std::optional<std::string> scalar(const YAML::Node& node, const char* key) {
  const auto child = node[key];
  if (!child || child.IsNull()) return std::nullopt;
  if (!child.IsScalar()) throw ParseError(fmt::format("CITATION.cff key '{}' must be a scalar", key));
  return child.as<std::string>();
}

std::string required(const YAML::Node& root, const char* key) {
  auto v = scalar(root, key);
  if (!v || v->empty()) throw ParseError(fmt::format("CITATION.cff is missing required key '{}'", key));
  return *v;
}

}  // namespace

CitationMetadata parse_cff(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(fmt::format("malformed CITATION.cff: {}", e.what()));
  }
  if (!root.IsMap()) throw ParseError("malformed CITATION.cff: top level is not a mapping");

  CitationMetadata meta;
  try {
    meta.cff_version = required(root, "cff-version");
    meta.title = required(root, "title");

    const auto authors = root["authors"];
    if (!authors) throw ParseError("CITATION.cff is missing required key 'authors'");
    if (!authors.IsSequence()) throw ParseError("CITATION.cff 'authors' must be a list");
    for (const auto& a : authors) {
      if (!a.IsMap()) throw ParseError("CITATION.cff author entries must be mappings");
      CffAuthor author;
      author.family_names = scalar(a, "family-names").value_or(scalar(a, "name").value_or(""));
      author.given_names = scalar(a, "given-names").value_or("");
      author.orcid = scalar(a, "orcid");
      if (author.family_names.empty() && author.given_names.empty())
        throw ParseError("CITATION.cff author entry has no name");
      meta.authors.push_back(std::move(author));
    }
    if (meta.authors.empty()) throw ParseError("CITATION.cff authors list is empty");

    meta.doi = scalar(root, "doi");
    if (!meta.doi) {
      if (const auto ids = root["identifiers"]; ids && ids.IsSequence()) {
        for (const auto& id : ids) {
          if (id.IsMap() && scalar(id, "type") == std::optional<std::string>("doi")) {
            meta.doi = scalar(id, "value");
            break;
          }
        }
      }
    }
    if (meta.doi && !is_valid_doi(*meta.doi))
      throw ParseError(fmt::format("CITATION.cff doi '{}' is not a valid DOI", *meta.doi));
    meta.version = scalar(root, "version");
    meta.date_released = scalar(root, "date-released");
    if (meta.date_released && !is_iso_date(*meta.date_released))
      throw ParseError(
          fmt::format("CITATION.cff date-released '{}' is not YYYY-MM-DD", *meta.date_released));
  } catch (const YAML::Exception& e) {
    throw ParseError(fmt::format("malformed CITATION.cff: {}", e.what()));
  }
  return meta;
}

std::string to_cff(const CitationMetadata& meta) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "cff-version" << YAML::Value << YAML::DoubleQuoted << meta.cff_version;
  out << YAML::Key << "title" << YAML::Value << YAML::DoubleQuoted << meta.title;
  out << YAML::Key << "authors" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : meta.authors) {
    out << YAML::BeginMap;
    out << YAML::Key << "family-names" << YAML::Value << YAML::DoubleQuoted << a.family_names;
    if (!a.given_names.empty())
      out << YAML::Key << "given-names" << YAML::Value << YAML::DoubleQuoted << a.given_names;
    if (a.orcid) out << YAML::Key << "orcid" << YAML::Value << YAML::DoubleQuoted << *a.orcid;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  if (meta.doi) out << YAML::Key << "doi" << YAML::Value << YAML::DoubleQuoted << *meta.doi;
  if (meta.version)
    out << YAML::Key << "version" << YAML::Value << YAML::DoubleQuoted << *meta.version;
  if (meta.date_released)
    out << YAML::Key << "date-released" << YAML::Value << YAML::DoubleQuoted
        << *meta.date_released;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace fairseco
