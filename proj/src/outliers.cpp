// SPDX-License-Identifier: Apache-2.0

#include "rank_consensus/outliers.hpp"

#include <algorithm>
#include <string>

#include "rank_consensus/errors.hpp"

namespace rank_consensus {

std::size_t OutlierReport::flagged_count() const
{
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

OutlierReport detect_outliers(const ConsensusReport& report, double eps1, double eps2)
{
    if (!(eps1 > 0.0) || !(eps2 > 0.0)) {
        throw ParameterError("outlier thresholds must be positive");
    }
    if (report.kappa1_bar <= 0.0 || report.kappa2_bar <= 0.0) {
        throw DegenerateConsensusError("overall consensus is zero at q = " + std::to_string(report.params.q) +
                                       "; relative deviations are undefined (try a smaller q)");
    }
    OutlierReport out;
    out.eps1 = eps1;
    out.eps2 = eps2;
    const std::size_t n = report.per_ranking.size();
    out.v1.reserve(n);
    out.v2.reserve(n);
    out.flags.reserve(n);
    for (const auto& s : report.per_ranking) {
        const double v1 = (s.kappa1 - report.kappa1_bar) / report.kappa1_bar;
        const double v2 = (s.kappa2 - report.kappa2_bar) / report.kappa2_bar;
        out.v1.push_back(v1);
        out.v2.push_back(v2);
        out.flags.push_back(v1 < -eps1 || v2 < -eps2);
    }
    return out;
}

int rescale_q(int q, std::size_t total, std::size_t survivors, QRescale mode)
{
    if (survivors == 0) {
        throw PreconditionError("no rankings left to rescore");
    }
    if (mode == QRescale::absolute) {
        if (static_cast<std::size_t>(q) > survivors) {
            throw ParameterError("q = " + std::to_string(q) + " exceeds the " + std::to_string(survivors) +
                                 " remaining rankings");
        }
        return q;
    }
    const auto scaled = (static_cast<std::size_t>(q) * survivors + total - 1) / total;
    return static_cast<int>(std::max<std::size_t>(1, scaled));
}

ConsensusReport remove_and_rescore(const RankingSet& set, const OutlierReport& report, const ScoreParams& params,
                                   QRescale mode, const ExecutionOptions& exec)
{
    if (report.flags.size() != set.size()) {
        throw PreconditionError("outlier report does not match the ranking set");
    }
    const std::size_t survivors = set.size() - report.flagged_count();
    if (survivors == 0) {
        throw PreconditionError("every ranking is flagged as an outlier");
    }
    ScoreParams rescaled = params;
    rescaled.q = rescale_q(params.q, set.size(), survivors, mode);
    return score(set.subset(report.flags), rescaled, exec);
}

}  // namespace rank_consensus
