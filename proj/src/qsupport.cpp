// SPDX-License-Identifier: Apache-2.0

#include "rank_consensus/qsupport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>

#include "parallel.hpp"
#include "rank_consensus/deviations.hpp"
#include "rank_consensus/errors.hpp"

namespace rank_consensus {

std::size_t support_count(const ItemId& x, const ItemId& y, const RankingSet& set)
{
    return static_cast<std::size_t>(std::count_if(set.rankings().begin(), set.rankings().end(),
                                                  [&](const Ranking& r) { return contains_pattern(x, y, r); }));
}

void validate_support_params(const RankingSet& set, int q, const std::optional<DeviationWeights>& weights)
{
    if (q < 1 || static_cast<std::size_t>(q) > set.size()) {
        throw ParameterError("q must lie in [1, " + std::to_string(set.size()) + "], got " + std::to_string(q));
    }
    if (weights) {
        if (!(weights->gamma > 0.0 && weights->gamma <= 1.0)) {
            throw ParameterError("gamma must lie in (0, 1], got " + std::to_string(weights->gamma));
        }
        if (!(weights->lambda > 0.0 && weights->lambda <= 1.0)) {
            throw ParameterError("lambda must lie in (0, 1], got " + std::to_string(weights->lambda));
        }
    }
}

double deviation_weight(double base, double deviation)
{
    if (base == 1.0 || deviation == 0.0) {
        return 1.0;
    }
    // Clamped so that a supported pattern never lands on an exact zero entry.
    return std::max(std::exp(deviation * std::log(base)), std::numeric_limits<double>::denorm_min());
}

SupportMatrix support_matrix_naive(std::size_t l, const RankingSet& set, int q,
                                   const std::optional<DeviationWeights>& weights)
{
    validate_support_params(set, q, weights);
    const Ranking& ranking = set.at(l);
    const auto items = ranking.items();
    const auto m = static_cast<Eigen::Index>(items.size());

    SupportMatrix out{l, SupportMatrix::Matrix::Zero(m, m)};
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            const ItemId& x = items[i];
            const ItemId& y = items[j];
            if (support_count(x, y, set) < static_cast<std::size_t>(q)) {
                continue;
            }
            double entry = 1.0;
            if (weights) {
                entry = i == j ? deviation_weight(weights->gamma, position_deviation(x, l, set))
                               : deviation_weight(weights->lambda, gap_deviation(x, y, l, set));
            }
            out.entries(j, i) = entry;
        }
    }
    return out;
}

namespace {

/// Rankings as dense item indices with a sorted (item, position) table for lookups.
class InternedRankings {
public:
    explicit InternedRankings(const RankingSet& set) : universe_size_(set.universe().size())
    {
        items_.reserve(set.size());
        lookup_.reserve(set.size());
        positions_.reserve(set.size());
        for (const auto& ranking : set.rankings()) {
            std::vector<std::uint32_t> ids;
            std::vector<int> pos;
            std::vector<std::pair<std::uint32_t, int>> table;
            ids.reserve(ranking.size());
            pos.reserve(ranking.size());
            for (std::size_t i = 0; i < ranking.size(); ++i) {
                const auto id = static_cast<std::uint32_t>(set.index_of(ranking.items()[i]));
                ids.push_back(id);
                pos.push_back(ranking.position_at(i));
                table.emplace_back(id, ranking.position_at(i));
            }
            std::sort(table.begin(), table.end());
            items_.push_back(std::move(ids));
            positions_.push_back(std::move(pos));
            lookup_.push_back(std::move(table));
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
    [[nodiscard]] const std::vector<std::uint32_t>& items(std::size_t l) const { return items_[l]; }
    [[nodiscard]] const std::vector<int>& positions(std::size_t l) const { return positions_[l]; }

    [[nodiscard]] int position(std::size_t z, std::uint32_t item) const
    {
        const auto& table = lookup_[z];
        const auto it = std::lower_bound(table.begin(), table.end(), std::pair<std::uint32_t, int>{item, 0});
        return it != table.end() && it->first == item ? it->second : 0;
    }

    [[nodiscard]] std::uint64_t key(std::uint32_t x, std::uint32_t y) const
    {
        return static_cast<std::uint64_t>(x) * universe_size_ + y;
    }

private:
    std::size_t universe_size_;
    std::vector<std::vector<std::uint32_t>> items_;
    std::vector<std::vector<int>> positions_;
    std::vector<std::vector<std::pair<std::uint32_t, int>>> lookup_;
};

struct ResolvedPattern {
    bool supported = false;
    PositionStats stats;  // complete only when supported
};

using PatternMemo = std::unordered_map<std::uint64_t, ResolvedPattern>;

/**
 * Resolves every pattern contained in ranking l that no earlier ranking
 * contained. Both orders of a tied pair are resolved so that "not in the
 * memo" keeps meaning "absent from rankings 0..l-1".
 */
void resolve_patterns_of(std::size_t l, const InternedRankings& rankings, int q, PatternMemo& memo,
                         FastPathStats& stats)
{
    const std::size_t n = rankings.size();
    const auto& ids = rankings.items(l);
    const auto& pos = rankings.positions(l);
    const auto need = static_cast<std::int64_t>(q);

    auto resolve = [&](std::uint32_t x, std::uint32_t y, bool counted_cell) {
        if (counted_cell) {
            ++stats.patterns_visited;
        }
        const auto key = rankings.key(x, y);
        if (memo.contains(key)) {
            if (counted_cell) {
                ++stats.patterns_reused;
            }
            return;
        }
        ResolvedPattern resolved;
        if (static_cast<std::int64_t>(n - l) < need) {
            ++stats.patterns_pruned;
            memo.emplace(key, resolved);
            return;
        }
        std::int64_t found = 0;
        std::int64_t sum = 0;
        for (std::size_t z = l; z < n; ++z) {
            ++stats.rankings_scanned;
            const int px = rankings.position(z, x);
            if (px > 0) {
                const int py = x == y ? px : rankings.position(z, y);
                if (py >= px) {
                    ++found;
                    sum += x == y ? px : py - px;
                }
            }
            if (static_cast<std::int64_t>(n - z - 1) + found < need) {
                ++stats.counts_cut_short;
                break;
            }
        }
        resolved.supported = found >= need;
        resolved.stats = PositionStats{found, sum};
        memo.emplace(key, resolved);
    };

    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i; j < ids.size(); ++j) {
            resolve(ids[i], ids[j], true);
            if (j != i && pos[i] == pos[j]) {
                resolve(ids[j], ids[i], false);
            }
        }
    }
}

}  // namespace

std::vector<SupportMatrix> support_matrices_fast(const RankingSet& set, int q,
                                                 const std::optional<DeviationWeights>& weights,
                                                 const ExecutionOptions& exec, FastPathStats* stats)
{
    validate_support_params(set, q, weights);
    const InternedRankings rankings(set);
    const std::size_t n = rankings.size();

    PatternMemo memo;
    FastPathStats local;
    for (std::size_t l = 0; l < n; ++l) {
        resolve_patterns_of(l, rankings, q, memo, local);
    }
    if (stats) {
        *stats = local;
    }

    // The memo is read-only from here on.
    std::vector<SupportMatrix> matrices(n);
    detail::parallel_for(n, exec.threads, [&](std::size_t l) {
        const auto& ids = rankings.items(l);
        const auto& pos = rankings.positions(l);
        const auto m = static_cast<Eigen::Index>(ids.size());
        SupportMatrix out{l, SupportMatrix::Matrix::Zero(m, m)};
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = i; j < m; ++j) {
                const ResolvedPattern& resolved = memo.at(rankings.key(ids[i], ids[j]));
                if (!resolved.supported) {
                    continue;
                }
                double entry = 1.0;
                if (weights) {
                    entry = i == j ? deviation_weight(weights->gamma, resolved.stats.deviation(pos[i]))
                                   : deviation_weight(weights->lambda, resolved.stats.deviation(pos[j] - pos[i]));
                }
                out.entries(j, i) = entry;
            }
        }
        matrices[l] = std::move(out);
    });
    return matrices;
}

SupportSets support_sets(std::span<const SupportMatrix> matrices, const RankingSet& set)
{
    SupportSets sets;
    sets.per_ranking.resize(matrices.size());
    for (std::size_t k = 0; k < matrices.size(); ++k) {
        const SupportMatrix& a = matrices[k];
        const auto items = set.at(a.owner).items();
        if (static_cast<std::size_t>(a.dim()) != items.size()) {
            throw PreconditionError("support matrix " + std::to_string(k + 1) + " does not match ranking " +
                                    std::to_string(a.owner + 1));
        }
        auto& mine = sets.per_ranking[k];
        for (Eigen::Index i = 0; i < a.dim(); ++i) {
            if (a.entries(i, i) != 0.0) {
                mine.singles.push_back(items[i]);
                sets.singles.insert(items[i]);
            }
            for (Eigen::Index j = i + 1; j < a.dim(); ++j) {
                if (a.entries(j, i) != 0.0) {
                    mine.pairs.emplace_back(items[i], items[j]);
                    sets.pairs.emplace(items[i], items[j]);
                }
            }
        }
    }
    return sets;
}

}  // namespace rank_consensus
