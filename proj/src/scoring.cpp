#include "fairseco/scoring.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace fairseco {

namespace {

void check_percent(const char* name, double v) {
  if (!(v >= 0.0 && v <= 100.0))
    throw ValidationError(fmt::format("{} = {} is outside [0,100]", name, v));
}

}  // namespace

double maintainability_score(const IssueStats& issues) {
  if (issues.closed > issues.total)
    throw ValidationError(fmt::format("closed issues ({}) exceed total issues ({})", issues.closed,
                                      issues.total));
  if (issues.total == 0) return 100.0;
  return 100.0 * static_cast<double>(issues.closed) / static_cast<double>(issues.total);
}

double documentation_score(const FileInventory& inventory) {
  return (inventory.has_docs_dir ? 50.0 : 0.0) + (inventory.has_readme ? 50.0 : 0.0);
}

double quality_score(double s_fair, double s_license, double s_maintainability,
                     double s_documentation, const ScoreWeights& weights) {
  check_percent("s_fair", s_fair);
  check_percent("s_license", s_license);
  check_percent("s_maintainability", s_maintainability);
  check_percent("s_documentation", s_documentation);
  const auto& w = validate_weights(weights);
  const double q = (s_fair * w.fair + s_license * w.license + s_maintainability * w.maintainability +
                    s_documentation * w.documentation) /
                   w.quality_total();
  // A weighted mean of values in [0,100]; only rounding can push it past the ends.
  return std::clamp(q, 0.0, 100.0);
}

double impact_score(std::uint64_t n_citations, std::uint64_t n_reuse, double s_quality,
                    const ScoreWeights& weights) {
  check_percent("s_quality", s_quality);
  const auto& w = validate_weights(weights);
  if (w.impact_count_cap) {
    n_citations = std::min(n_citations, *w.impact_count_cap);
    n_reuse = std::min(n_reuse, *w.impact_count_cap);
  }
  return (static_cast<double>(n_citations) * w.citations +
          static_cast<double>(n_reuse) * w.reuse + s_quality * w.quality) /
         w.impact_total();
}

ScoreCard build_scorecard(const ScoreInputs& in, const ScoreWeights& weights) {
  ScoreCard card;
  card.weights = validate_weights(weights);
  card.s_fair = in.s_fair;
  card.s_license = in.s_license;
  card.s_maintainability = in.s_maintainability;
  card.s_documentation = in.s_documentation;
  card.n_citations = in.n_citations;
  card.n_reuse_projects = in.n_reuse_projects;
  card.s_quality = quality_score(in.s_fair, in.s_license, in.s_maintainability,
                                 in.s_documentation, card.weights);
  card.s_impact_raw = impact_score(in.n_citations, in.n_reuse_projects, card.s_quality, card.weights);
  card.s_impact = std::clamp(card.s_impact_raw, 0.0, 100.0);
  validate_scorecard(card);
  return card;
}

bool scorecard_consistent(const ScoreCard& card, double tolerance) {
  const double q = quality_score(card.s_fair, card.s_license, card.s_maintainability,
                                 card.s_documentation, card.weights);
  const double raw = impact_score(card.n_citations, card.n_reuse_projects, card.s_quality, card.weights);
  return std::abs(q - card.s_quality) <= tolerance && std::abs(raw - card.s_impact_raw) <= tolerance &&
         std::abs(std::clamp(raw, 0.0, 100.0) - card.s_impact) <= tolerance;
}

}  // namespace fairseco
