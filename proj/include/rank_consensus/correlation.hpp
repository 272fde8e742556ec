// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "rank_consensus/ranking.hpp"

namespace rank_consensus {

/// Parameters of the top-k measures. `ell` defaults to k + 1.
struct TopKParams {
    std::size_t k = 1;
    double p = 0.0;
    std::optional<double> ell;

    [[nodiscard]] double missing_position() const { return ell.value_or(static_cast<double>(k) + 1.0); }
};

/// Kendall's tau of two strict rankings over the same items.
[[nodiscard]] double kendall_tau(const Ranking& a, const Ranking& b);

/// Spearman's rho (Pearson correlation of positions) of two strict rankings over the same items.
[[nodiscard]] double spearman_rho(const Ranking& a, const Ranking& b);

/**
 * Kendall's tau for top-k lists, in correlation form. Each unordered pair of
 * the union of the two prefixes contributes:
 *
 *   both items in both lists          +1 concordant, -1 discordant
 *   both in one list, one in other    the present item counts as ahead of the missing one
 *   each item in a different list     -1
 *   both in one list, none in other   p
 *
 * and the total is divided by the number of pairs, C(|union|, 2).
 */
[[nodiscard]] double kendall_tau_topk(const Ranking& a, const Ranking& b, const TopKParams& params);

/// Spearman's rho over the union of the two top-k prefixes; missing items sit at position ell.
[[nodiscard]] double spearman_rho_topk(const Ranking& a, const Ranking& b, const TopKParams& params);

enum class Measure { kendall, spearman, kendall_topk, spearman_topk };

[[nodiscard]] Measure parse_measure(std::string_view name);
[[nodiscard]] std::string_view to_string(Measure measure);

[[nodiscard]] double correlate(const Ranking& a, const Ranking& b, Measure measure,
                               const std::optional<TopKParams>& params = std::nullopt);

struct PairwiseAverage {
    Measure measure = Measure::kendall;
    std::vector<double> per_ranking;  ///< mean of measure(r_l, r_z) over z != l
    double overall = 0.0;             ///< mean of the per-ranking means
};

/// Errors from individual comparisons are rethrown with the offending pair of rankings named.
[[nodiscard]] PairwiseAverage pairwise_average(const RankingSet& set, Measure measure,
                                               const std::optional<TopKParams>& params = std::nullopt);

}  // namespace rank_consensus
