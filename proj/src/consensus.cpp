// SPDX-License-Identifier: Apache-2.0

#include "rank_consensus/consensus.hpp"

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "rank_consensus/errors.hpp"
#include "rank_consensus/numeric.hpp"

namespace rank_consensus {

namespace {

std::optional<DeviationWeights> weights_of(const ScoreParams& params)
{
    if (!params.weighted()) {
        return std::nullopt;
    }
    return DeviationWeights{params.gamma, params.lambda};
}

std::pair<double, double> means_of(const std::vector<RankingScore>& scores)
{
    std::vector<double> k1;
    std::vector<double> k2;
    k1.reserve(scores.size());
    k2.reserve(scores.size());
    for (const auto& s : scores) {
        k1.push_back(s.kappa1);
        k2.push_back(s.kappa2);
    }
    return {compensated_mean(k1), compensated_mean(k2)};
}

void fill_means(ConsensusReport& report)
{
    std::tie(report.kappa1_bar, report.kappa2_bar) = means_of(report.per_ranking);
}

RankingScore make_score(std::size_t m, double single_mass, double pair_mass)
{
    RankingScore s;
    s.n1 = m;
    s.n2 = m * (m - 1) / 2;
    s.kappa1 = single_mass / static_cast<double>(s.n1);
    s.singleton = m == 1;
    s.kappa2 = s.singleton ? 0.0 : pair_mass / static_cast<double>(s.n2);
    return s;
}

}  // namespace

void validate(const ScoreParams& params, const RankingSet& set)
{
    validate_support_params(set, params.q, DeviationWeights{params.gamma, params.lambda});
}

ConsensusReport score(const RankingSet& set, const ScoreParams& params, const ExecutionOptions& exec)
{
    validate(params, set);
    ConsensusReport report;
    report.params = params;
    report.matrices = support_matrices_fast(set, params.q, weights_of(params), exec);
    report.per_ranking.reserve(set.size());
    for (const auto& a : report.matrices) {
        report.per_ranking.push_back(
            make_score(static_cast<std::size_t>(a.dim()), single_support_mass(a.entries), pair_support_mass(a.entries)));
    }
    fill_means(report);
    report.sets = support_sets(report.matrices, set);
    return report;
}

ConsensusReport score_by_counting(const RankingSet& set, const ScoreParams& params)
{
    validate(params, set);
    const auto q = static_cast<std::size_t>(params.q);
    ConsensusReport report;
    report.params = params;
    report.sets.per_ranking.resize(set.size());
    for (std::size_t l = 0; l < set.size(); ++l) {
        const auto items = set[l].items();
        auto& mine = report.sets.per_ranking[l];
        double singles = 0.0;
        double pairs = 0.0;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (support_count(items[i], items[i], set) >= q) {
                mine.singles.push_back(items[i]);
                singles += deviation_weight(params.gamma, position_deviation(items[i], l, set));
            }
        }
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (std::size_t j = i + 1; j < items.size(); ++j) {
                if (support_count(items[i], items[j], set) >= q) {
                    mine.pairs.emplace_back(items[i], items[j]);
                    pairs += deviation_weight(params.lambda, gap_deviation(items[i], items[j], l, set));
                }
            }
        }
        report.sets.singles.insert(mine.singles.begin(), mine.singles.end());
        report.sets.pairs.insert(mine.pairs.begin(), mine.pairs.end());
        report.per_ranking.push_back(make_score(items.size(), singles, pairs));
    }
    fill_means(report);
    return report;
}

void check_invariants(const ConsensusReport& report)
{
    auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0 + 1e-12; };
    for (std::size_t l = 0; l < report.per_ranking.size(); ++l) {
        const auto& s = report.per_ranking[l];
        if (!in_unit(s.kappa1) || !in_unit(s.kappa2)) {
            throw InvariantError("score of ranking " + std::to_string(l + 1) + " is outside [0, 1]");
        }
    }
    if (!in_unit(report.kappa1_bar) || !in_unit(report.kappa2_bar)) {
        throw InvariantError("overall score is outside [0, 1]");
    }
    const auto [k1, k2] = means_of(report.per_ranking);
    if (k1 != report.kappa1_bar || k2 != report.kappa2_bar) {
        throw InvariantError("overall scores are not the mean of the individual scores");
    }
}

}  // namespace rank_consensus
