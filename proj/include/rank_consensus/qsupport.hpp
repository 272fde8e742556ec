// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rank_consensus/ranking.hpp"

namespace rank_consensus {

/// Deviation weights for the weighted scores. Both must lie in (0, 1].
struct DeviationWeights {
    double gamma = 1.0;   ///< base for item position deviations
    double lambda = 1.0;  ///< base for pair gap deviations
};

/// Number of threads used by the parallel parts of the engine; 0 picks hardware concurrency.
struct ExecutionOptions {
    unsigned threads = 1;
};

/**
 * Lower-triangular support matrix of one ranking. Row j, column i (i <= j)
 * describes the pattern r_i r_j of the owner ranking: zero when the pattern is
 * not q-supported, 1 (plain) or a deviation weight in (0, 1] (weighted) when
 * it is. The diagonal holds the single-item patterns.
 */
template <typename Scalar>
struct BasicSupportMatrix {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    std::size_t owner = 0;
    Matrix entries;

    [[nodiscard]] Eigen::Index dim() const noexcept { return entries.rows(); }
    friend bool operator==(const BasicSupportMatrix& a, const BasicSupportMatrix& b)
    {
        return a.owner == b.owner && a.entries.rows() == b.entries.rows() &&
               a.entries.cols() == b.entries.cols() && a.entries == b.entries;
    }
};

using SupportMatrix = BasicSupportMatrix<double>;

/// tr(A): (weighted) count of q-supported single items.
template <typename Derived>
[[nodiscard]] typename Derived::Scalar single_support_mass(const Eigen::MatrixBase<Derived>& a)
{
    return a.trace();
}

/// e^T A e - tr(A): (weighted) count of q-supported pairs. Summed below the
/// diagonal directly; subtracting the trace cancels and can leave the result
/// slightly outside [0, m(m-1)/2].
template <typename Derived>
[[nodiscard]] typename Derived::Scalar pair_support_mass(const Eigen::MatrixBase<Derived>& a)
{
    typename Derived::Scalar total(0);
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
        total += a.col(i).tail(a.rows() - i - 1).sum();
    }
    return total;
}

using ItemPair = std::pair<ItemId, ItemId>;

/// Single q-support items and pairwise q-support patterns, overall and per ranking.
struct SupportSets {
    struct PerRanking {
        std::vector<ItemId> singles;  ///< in ranking order
        std::vector<ItemPair> pairs;  ///< row-major over (i < j) in ranking order
    };

    std::set<ItemId> singles;
    std::set<ItemPair> pairs;
    std::vector<PerRanking> per_ranking;
};

/// Number of rankings in `set` that contain the pattern xy (for x == y, that contain x).
[[nodiscard]] std::size_t support_count(const ItemId& x, const ItemId& y, const RankingSet& set);

/// Throws ParameterError unless 1 <= q <= N and, when given, both weights are in (0, 1].
void validate_support_params(const RankingSet& set, int q, const std::optional<DeviationWeights>& weights);

/**
 * Reference construction of A for ranking `l`: each entry is computed by a
 * full scan of every ranking with no sharing between entries.
 */
[[nodiscard]] SupportMatrix support_matrix_naive(std::size_t l, const RankingSet& set, int q,
                                                 const std::optional<DeviationWeights>& weights = std::nullopt);

/// Counters describing how much work the fast path avoided.
struct FastPathStats {
    std::size_t patterns_visited = 0;   ///< (i <= j) cells across all matrices
    std::size_t patterns_reused = 0;    ///< answered from a previously resolved pattern
    std::size_t patterns_pruned = 0;    ///< rejected because fewer than q unseen rankings remained
    std::size_t counts_cut_short = 0;   ///< count loops that exited once q became unreachable
    std::size_t rankings_scanned = 0;   ///< ranking membership tests actually performed
};

/**
 * All N support matrices. Patterns are resolved once, in ranking order: a
 * pattern first met in ranking l cannot occur in rankings 1..l-1, so its count
 * only scans l..N and stops as soon as q is out of reach. Later rankings reuse
 * the verdict together with the recorded mean position / mean gap. Matrices
 * are then filled in parallel from the resolved patterns.
 *
 * Equal to support_matrix_naive for every l: bit-identical in plain mode.
 */
[[nodiscard]] std::vector<SupportMatrix> support_matrices_fast(const RankingSet& set, int q,
                                                               const std::optional<DeviationWeights>& weights = std::nullopt,
                                                               const ExecutionOptions& exec = {},
                                                               FastPathStats* stats = nullptr);

/// Reads S1/S2 off the matrices, which must all come from the same (set, q).
[[nodiscard]] SupportSets support_sets(std::span<const SupportMatrix> matrices, const RankingSet& set);

/// w^deviation with w == 1 mapped to exactly 1.
[[nodiscard]] double deviation_weight(double base, double deviation);

}  // namespace rank_consensus
