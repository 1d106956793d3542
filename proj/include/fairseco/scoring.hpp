// Maintainability and documentation sub-scores and the two composites.

#pragma once

#include <cstdint>

#include "fairseco/model.hpp"

namespace fairseco {

/// 100 * C_i / N_i; exactly 100 when there are no issues.
double maintainability_score(const IssueStats& issues);

/// 50 for a docs directory plus 50 for a README.
double documentation_score(const FileInventory& inventory);

/// Weighted mean of the four quality sub-scores. Throws ValidationError on an
/// input outside [0,100] or an invalid weight group.
double quality_score(double s_fair, double s_license, double s_maintainability,
                     double s_documentation, const ScoreWeights& weights);

/// Weighted combination of N_c, N_r and S_quality, unclamped. The optional
/// count cap in `weights` applies to N_c and N_r before weighting.
double impact_score(std::uint64_t n_citations, std::uint64_t n_reuse, double s_quality,
                    const ScoreWeights& weights);

struct ScoreInputs {
  double s_fair = 0.0;
  double s_license = 0.0;
  double s_maintainability = 0.0;
  double s_documentation = 0.0;
  std::uint64_t n_citations = 0;
  std::uint64_t n_reuse_projects = 0;
};

ScoreCard build_scorecard(const ScoreInputs& inputs, const ScoreWeights& weights);

/// Re-derives both composites from the card's own inputs and weights.
bool scorecard_consistent(const ScoreCard& card, double tolerance = 1e-9);

}  // namespace fairseco
