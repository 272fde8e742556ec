// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rank_consensus/ranking.hpp"

namespace rank_consensus {

/**
 * Exact position statistics of an item or pattern over a ranking set: the
 * number of supporting rankings and the integer sum of positions (or gaps)
 * over them. Means are sum / count; deviations are formed as
 * |value * count - sum| / count so that every route that holds the same
 * integers produces the same double.
 */
struct PositionStats {
    std::int64_t count = 0;
    std::int64_t sum = 0;

    [[nodiscard]] double mean() const { return static_cast<double>(sum) / static_cast<double>(count); }
    [[nodiscard]] double deviation(std::int64_t value) const
    {
        const std::int64_t scaled = value * count - sum;
        return static_cast<double>(scaled < 0 ? -scaled : scaled) / static_cast<double>(count);
    }
};

/// Position statistics of x across the rankings containing it.
[[nodiscard]] PositionStats item_position_stats(const ItemId& x, const RankingSet& set);

/// Gap statistics (pos(y) - pos(x)) across the rankings containing the pattern xy.
[[nodiscard]] PositionStats pattern_gap_stats(const ItemId& x, const ItemId& y, const RankingSet& set);

/// Average position of x; empty when no ranking contains x.
[[nodiscard]] std::optional<double> mean_position(const ItemId& x, const RankingSet& set);

/// Average gap of the pattern xy; empty when no ranking contains it.
[[nodiscard]] std::optional<double> mean_gap(const ItemId& x, const ItemId& y, const RankingSet& set);

/// |pos(x, r_l) - mean position of x|. Throws PreconditionError if x is not in r_l.
[[nodiscard]] double position_deviation(const ItemId& x, std::size_t l, const RankingSet& set);

/// |gap(x, y, r_l) - mean gap of xy|. Throws PreconditionError if xy is not contained in r_l.
[[nodiscard]] double gap_deviation(const ItemId& x, const ItemId& y, std::size_t l, const RankingSet& set);

}  // namespace rank_consensus
