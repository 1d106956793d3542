#include "fairseco/model.hpp"

#include <cmath>

#include <fmt/format.h>

namespace fairseco {

std::string RepositoryRef::url() const {
  if (!has_forge()) return local_path ? local_path->string() : slug();
  return fmt::format("https://{}/{}/{}", forge_host, owner, name);
}

RepositoryRef make_repository_ref(std::string forge_host, std::string owner, std::string name,
                                  std::optional<std::filesystem::path> local_path) {
  if (owner.empty()) throw ValidationError("repository owner must be non-empty");
  if (name.empty()) throw ValidationError("repository name must be non-empty");
  if (forge_host.empty() && !local_path)
    throw ValidationError("repository needs forge coordinates or a local path");
  return RepositoryRef{std::move(forge_host), std::move(owner), std::move(name),
                       std::move(local_path)};
}

namespace {

bool valid_segment(std::string_view s) {
  if (s.empty() || s == "." || s == "..") return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::optional<RepositoryRef> parse_repository_url(std::string_view text) {
  std::string_view host = "github.com";
  std::string_view rest = text;
  for (std::string_view prefix : {"https://", "http://"}) {
    if (rest.starts_with(prefix)) {
      rest.remove_prefix(prefix.size());
      const auto slash = rest.find('/');
      if (slash == std::string_view::npos) return std::nullopt;
      host = rest.substr(0, slash);
      rest.remove_prefix(slash + 1);
      break;
    }
  }
  if (rest.starts_with("git@")) {
    rest.remove_prefix(4);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    host = rest.substr(0, colon);
    rest.remove_prefix(colon + 1);
  }
  while (rest.ends_with('/')) rest.remove_suffix(1);
  if (rest.ends_with(".git")) rest.remove_suffix(4);
  const auto slash = rest.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  const auto owner = rest.substr(0, slash);
  const auto name = rest.substr(slash + 1);
  if (!valid_segment(owner) || !valid_segment(name) || host.empty()) return std::nullopt;
  return RepositoryRef{std::string(host), std::string(owner), std::string(name), std::nullopt};
}

IssueStats make_issue_stats(std::uint64_t total, std::uint64_t closed) {
  if (closed > total)
    throw ValidationError(
        fmt::format("closed issue count {} exceeds total issue count {}", closed, total));
  return IssueStats{total, closed};
}

std::string_view to_string(Recommendation r) {
  switch (r) {
    case Recommendation::R1: return "R1";
    case Recommendation::R2: return "R2";
    case Recommendation::R3: return "R3";
    case Recommendation::R4: return "R4";
    case Recommendation::R5: return "R5";
  }
  return "R?";
}

std::optional<Recommendation> recommendation_from_string(std::string_view s) {
  if (s.size() != 2 || s[0] != 'R' || s[1] < '1' || s[1] > '5') return std::nullopt;
  return static_cast<Recommendation>(s[1] - '0');
}

ScoreWeights validate_weights(const ScoreWeights& weights) {
  const std::pair<const char*, double> fields[] = {
      {"w_fair", weights.fair},           {"w_license", weights.license},
      {"w_maintainability", weights.maintainability},
      {"w_documentation", weights.documentation},
      {"w_citations", weights.citations}, {"w_reuse", weights.reuse},
      {"w_quality", weights.quality}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) throw ValidationError(fmt::format("{} must be finite", name));
    if (value < 0.0)
      throw ValidationError(fmt::format("{} must be non-negative (got {})", name, value));
  }
  if (weights.quality_total() <= 0.0) throw ValidationError("quality weight group sums to zero");
  if (weights.impact_total() <= 0.0) throw ValidationError("impact weight group sums to zero");
  return weights;
}

void validate_scorecard(const ScoreCard& card) {
  const std::pair<const char*, double> fields[] = {
      {"s_fair", card.s_fair},
      {"s_license", card.s_license},
      {"s_maintainability", card.s_maintainability},
      {"s_documentation", card.s_documentation},
      {"s_quality", card.s_quality},
      {"s_impact", card.s_impact}};
  for (const auto& [name, value] : fields) {
    if (!(value >= 0.0 && value <= 100.0))
      throw ValidationError(fmt::format("{} = {} is outside [0,100]", name, value));
  }
  validate_weights(card.weights);
}

int display_percent(double score) {
  // Nudge values that sit a few ulps under .5 due to binary arithmetic.
  return static_cast<int>(std::floor(score + 0.5 + 1e-9));
}

}  // namespace fairseco
