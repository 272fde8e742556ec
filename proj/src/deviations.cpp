// SPDX-License-Identifier: Apache-2.0

#include "rank_consensus/deviations.hpp"

#include "rank_consensus/errors.hpp"

namespace rank_consensus {

PositionStats item_position_stats(const ItemId& x, const RankingSet& set)
{
    PositionStats stats;
    for (const auto& ranking : set.rankings()) {
        if (const int p = ranking.position(x); p > 0) {
            ++stats.count;
            stats.sum += p;
        }
    }
    return stats;
}

PositionStats pattern_gap_stats(const ItemId& x, const ItemId& y, const RankingSet& set)
{
    PositionStats stats;
    for (const auto& ranking : set.rankings()) {
        if (contains_pattern(x, y, ranking)) {
            ++stats.count;
            stats.sum += ranking.position(y) - ranking.position(x);
        }
    }
    return stats;
}

std::optional<double> mean_position(const ItemId& x, const RankingSet& set)
{
    const auto stats = item_position_stats(x, set);
    if (stats.count == 0) {
        return std::nullopt;
    }
    return stats.mean();
}

std::optional<double> mean_gap(const ItemId& x, const ItemId& y, const RankingSet& set)
{
    const auto stats = pattern_gap_stats(x, y, set);
    if (stats.count == 0) {
        return std::nullopt;
    }
    return stats.mean();
}

double position_deviation(const ItemId& x, std::size_t l, const RankingSet& set)
{
    const int p = set.at(l).position(x);
    if (p == 0) {
        throw PreconditionError("item '" + x.token() + "' is not in ranking " + std::to_string(l + 1));
    }
    return item_position_stats(x, set).deviation(p);
}

double gap_deviation(const ItemId& x, const ItemId& y, std::size_t l, const RankingSet& set)
{
    const Ranking& ranking = set.at(l);
    if (!contains_pattern(x, y, ranking)) {
        throw PreconditionError("pattern '" + x.token() + y.token() + "' is not contained in ranking " +
                                std::to_string(l + 1));
    }
    return pattern_gap_stats(x, y, set).deviation(ranking.position(y) - ranking.position(x));
}

}  // namespace rank_consensus
