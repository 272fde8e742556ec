// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "rank_consensus/ranking.hpp"

namespace rank_consensus::testing {

/// The four rankings of the worked example over {a,...,h}.
inline RankingSet example_one()
{
    return RankingSet({
        Ranking::strict({"a", "b", "c", "d", "e", "f"}),
        Ranking::strict({"b", "c", "d", "e", "f", "a"}),
        Ranking::strict({"b", "d", "a", "g", "h", "f"}),
        Ranking::strict({"b", "a", "c", "d", "f", "e"}),
    });
}

inline std::vector<ItemId> alphabet(int n)
{
    std::vector<ItemId> items;
    for (int i = 0; i < n; ++i) {
        items.emplace_back(std::string(1, static_cast<char>('a' + i)));
    }
    return items;
}

struct RandomSetShape {
    int max_rankings = 8;
    int max_items = 8;
    bool truncate = true;
    bool ties = true;
};

/// Random ranking: shuffled subset of the universe, optionally grouped into tie blocks.
inline Ranking random_ranking(std::mt19937& rng, const std::vector<ItemId>& universe, const RandomSetShape& shape)
{
    std::vector<ItemId> items = universe;
    std::shuffle(items.begin(), items.end(), rng);
    std::size_t m = items.size();
    if (shape.truncate) {
        m = std::uniform_int_distribution<std::size_t>(1, items.size())(rng);
    }
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(m), items.end());
    std::vector<TieBlock> blocks;
    std::bernoulli_distribution join(shape.ties ? 0.3 : 0.0);
    for (auto& item : items) {
        if (!blocks.empty() && join(rng)) {
            blocks.back().push_back(std::move(item));
        } else {
            blocks.push_back(TieBlock{std::move(item)});
        }
    }
    return Ranking(std::move(blocks));
}

inline RankingSet random_set(std::mt19937& rng, const RandomSetShape& shape)
{
    const int n_rankings = std::uniform_int_distribution<int>(1, shape.max_rankings)(rng);
    const int n_items = std::uniform_int_distribution<int>(1, shape.max_items)(rng);
    const auto universe = alphabet(n_items);
    std::vector<Ranking> rankings;
    for (int l = 0; l < n_rankings; ++l) {
        rankings.push_back(random_ranking(rng, universe, shape));
    }
    return RankingSet(std::move(rankings));
}

/// Strict, complete ranking set: every ranking is a permutation of the same n items.
inline RankingSet random_complete_strict(std::mt19937& rng, int n_rankings, int n_items)
{
    const auto universe = alphabet(n_items);
    const RandomSetShape shape{n_rankings, n_items, false, false};
    std::vector<Ranking> rankings;
    for (int l = 0; l < n_rankings; ++l) {
        rankings.push_back(random_ranking(rng, universe, shape));
    }
    return RankingSet(std::move(rankings));
}

}  // namespace rank_consensus::testing
