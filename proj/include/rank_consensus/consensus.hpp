// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "rank_consensus/deviations.hpp"
#include "rank_consensus/qsupport.hpp"

namespace rank_consensus {

/// Support threshold and deviation weights. gamma == lambda == 1 gives the plain scores.
struct ScoreParams {
    int q = 1;
    double gamma = 1.0;
    double lambda = 1.0;

    [[nodiscard]] bool weighted() const noexcept { return gamma != 1.0 || lambda != 1.0; }
};

struct RankingScore {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    std::size_t n1 = 0;        ///< m, number of ranked items
    std::size_t n2 = 0;        ///< m(m-1)/2, number of ordered pairs
    bool singleton = false;    ///< m == 1: kappa2 is reported as 0
};

struct ConsensusReport {
    ScoreParams params;
    std::vector<RankingScore> per_ranking;
    double kappa1_bar = 0.0;
    double kappa2_bar = 0.0;
    SupportSets sets;
    std::vector<SupportMatrix> matrices;
};

/// Throws ParameterError when q or the weights are out of range for `set`.
void validate(const ScoreParams& params, const RankingSet& set);

/// Scores from the support matrices: kappa1 = tr(A)/m, kappa2 = (e^T A e - tr(A)) / (m(m-1)/2).
[[nodiscard]] ConsensusReport score(const RankingSet& set, const ScoreParams& params, const ExecutionOptions& exec = {});

/**
 * Scores straight from the definitions, without matrices: enumerate each
 * ranking's items and pairs, count support, and sum the deviation weights.
 * The returned report has no matrices.
 */
[[nodiscard]] ConsensusReport score_by_counting(const RankingSet& set, const ScoreParams& params);

/// Throws InvariantError if any score is outside [0, 1] or an overall score is not the mean.
void check_invariants(const ConsensusReport& report);

}  // namespace rank_consensus
