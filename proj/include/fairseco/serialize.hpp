// JSON encoding of the domain types. Keys are written in a fixed order so
// that equal values always produce identical bytes; every reader accepts what
// the matching writer produces.

#pragma once

#include <json.hpp>

#include "fairseco/cff.hpp"
#include "fairseco/citations.hpp"
#include "fairseco/license_audit.hpp"
#include "fairseco/model.hpp"
#include "fairseco/reuse_index.hpp"

namespace fairseco {

using Json = nlohmann::ordered_json;

Json to_json(const RepositoryRef& v);
Json to_json(const RepositoryMetadata& v);
Json to_json(const IssueStats& v);
Json to_json(const FileInventory& v);
Json to_json(const RepositorySnapshot& v);
Json to_json(const CheckResult& v);
Json to_json(const FairnessAssessment& v);
Json to_json(const ScoreWeights& v);
Json to_json(const ScoreCard& v);
Json to_json(const CitationMetadata& v);
Json to_json(const Dependency& v);
Json to_json(const LicenseFinding& v);
Json to_json(const LicenseAuditResult& v);
Json to_json(const SbomDocument& v);
Json to_json(const CitationRecord& v);
Json to_json(const CitationSet& v);
Json to_json(const RadarData& v);
Json to_json(const MethodFingerprint& v);
Json to_json(const ReuseMatch& v);
Json to_json(const ReuseReport& v);

// Readers throw ParseError describing the offending key.
void read_json(const Json& j, RepositoryRef& v);
void read_json(const Json& j, RepositoryMetadata& v);
void read_json(const Json& j, IssueStats& v);
void read_json(const Json& j, FileInventory& v);
void read_json(const Json& j, RepositorySnapshot& v);
void read_json(const Json& j, CheckResult& v);
void read_json(const Json& j, FairnessAssessment& v);
void read_json(const Json& j, ScoreWeights& v);
void read_json(const Json& j, ScoreCard& v);
void read_json(const Json& j, CitationMetadata& v);
void read_json(const Json& j, Dependency& v);
void read_json(const Json& j, LicenseFinding& v);
void read_json(const Json& j, LicenseAuditResult& v);
void read_json(const Json& j, SbomDocument& v);
void read_json(const Json& j, CitationRecord& v);
void read_json(const Json& j, CitationSet& v);
void read_json(const Json& j, RadarData& v);
void read_json(const Json& j, MethodFingerprint& v);
void read_json(const Json& j, ReuseMatch& v);
void read_json(const Json& j, ReuseReport& v);

template <class T>
T from_json(const Json& j) {
  T value;
  read_json(j, value);
  return value;
}

/// Two-space indented dump with a trailing newline.
std::string dump_pretty(const Json& j);

}  // namespace fairseco
