// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "rank_consensus/consensus.hpp"

namespace rank_consensus {

inline constexpr double kDefaultEpsilon = 0.4;

struct OutlierReport {
    std::vector<double> v1;  ///< (kappa1 - kappa1_bar) / kappa1_bar per ranking
    std::vector<double> v2;  ///< (kappa2 - kappa2_bar) / kappa2_bar per ranking
    std::vector<bool> flags;
    double eps1 = kDefaultEpsilon;
    double eps2 = kDefaultEpsilon;

    [[nodiscard]] std::size_t flagged_count() const;
};

/// Flags r_l when v1 < -eps1 or v2 < -eps2. Throws DegenerateConsensusError if an overall score is 0.
[[nodiscard]] OutlierReport detect_outliers(const ConsensusReport& report, double eps1 = kDefaultEpsilon,
                                            double eps2 = kDefaultEpsilon);

enum class QRescale {
    proportional,  ///< q' = ceil(q * N' / N)
    absolute,      ///< q' = q; must still satisfy q <= N'
};

/// Threshold to use once `survivors` of the original `total` rankings remain.
[[nodiscard]] int rescale_q(int q, std::size_t total, std::size_t survivors, QRescale mode);

/// Rescores the rankings that were not flagged. Throws PreconditionError if every ranking is flagged.
[[nodiscard]] ConsensusReport remove_and_rescore(const RankingSet& set, const OutlierReport& report,
                                                 const ScoreParams& params, QRescale mode = QRescale::proportional,
                                                 const ExecutionOptions& exec = {});

}  // namespace rank_consensus
