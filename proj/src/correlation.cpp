// SPDX-License-Identifier: Apache-2.0

#include "rank_consensus/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "rank_consensus/errors.hpp"
#include "rank_consensus/numeric.hpp"

namespace rank_consensus {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

void require_strict(const Ranking& r, const char* which)
{
    if (!r.is_strict()) {
        throw ParameterError(std::string("rank correlation needs strict rankings; ") + which + " has ties");
    }
}

void require_same_items(const Ranking& a, const Ranking& b)
{
    require_strict(a, "the first ranking");
    require_strict(b, "the second ranking");
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) {
        same = b.contains(a.items()[i]);
    }
    if (!same) {
        throw ParameterError("rankings must cover the same items");
    }
}

double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
{
    const Eigen::VectorXd dx = x.array() - x.mean();
    const Eigen::VectorXd dy = y.array() - y.mean();
    const double denom = std::sqrt(dx.squaredNorm() * dy.squaredNorm());
    if (!(denom > 0.0)) {
        throw ParameterError("Spearman's rho is undefined for constant position vectors");
    }
    return std::clamp(dx.dot(dy) / denom, -1.0, 1.0);
}

std::pair<Ranking, Ranking> top_k_prefixes(const Ranking& a, const Ranking& b, const TopKParams& params)
{
    require_strict(a, "the first ranking");
    require_strict(b, "the second ranking");
    if (params.k < 1) {
        throw ParameterError("k must be at least 1");
    }
    if (params.k > a.size() || params.k > b.size()) {
        throw ParameterError("k = " + std::to_string(params.k) + " exceeds a list of length " +
                             std::to_string(std::min(a.size(), b.size())));
    }
    if (!(params.p >= 0.0 && params.p <= 1.0)) {
        throw ParameterError("penalty p must lie in [0, 1]");
    }
    if (!(params.missing_position() >= static_cast<double>(params.k) + 1.0)) {
        throw ParameterError("ell must be at least k + 1");
    }
    return {a.prefix(params.k), b.prefix(params.k)};
}

std::vector<ItemId> union_of(const Ranking& a, const Ranking& b)
{
    std::vector<ItemId> items(a.items().begin(), a.items().end());
    for (const auto& item : b.items()) {
        if (!a.contains(item)) {
            items.push_back(item);
        }
    }
    return items;
}

// Pair term for one list: +1 if x is ahead of y, -1 if behind, 0 if neither is listed.
// An unlisted item is behind every listed one.
int order_in(const Ranking& r, const ItemId& x, const ItemId& y)
{
    const int px = r.position(x);
    const int py = r.position(y);
    if (px == 0 && py == 0) {
        return 0;
    }
    if (px == 0) {
        return -1;
    }
    if (py == 0) {
        return 1;
    }
    return sign(static_cast<double>(py - px));
}

}  // namespace

double kendall_tau(const Ranking& a, const Ranking& b)
{
    require_same_items(a, b);
    const std::size_t n = a.size();
    if (n < 2) {
        throw ParameterError("Kendall's tau needs at least two items");
    }
    const auto items = a.items();
    long long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            total += sign(a.position(items[i]) - a.position(items[j])) *
                     sign(b.position(items[i]) - b.position(items[j]));
        }
    }
    return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

double spearman_rho(const Ranking& a, const Ranking& b)
{
    require_same_items(a, b);
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::VectorXd pa(n);
    Eigen::VectorXd pb(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        pa(i) = a.position(a.items()[i]);
        pb(i) = b.position(a.items()[i]);
    }
    return pearson(pa, pb);
}

double kendall_tau_topk(const Ranking& a, const Ranking& b, const TopKParams& params)
{
    const auto [ta, tb] = top_k_prefixes(a, b, params);
    const auto items = union_of(ta, tb);
    if (items.size() < 2) {
        throw ParameterError("top-k Kendall's tau needs at least two distinct items");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            const int oa = order_in(ta, items[i], items[j]);
            const int ob = order_in(tb, items[i], items[j]);
            // Both items unlisted in one ranking: no information about their order.
            total += (oa == 0 || ob == 0) ? params.p : static_cast<double>(oa * ob);
        }
    }
    const double pairs = static_cast<double>(items.size()) * static_cast<double>(items.size() - 1) / 2.0;
    return total / pairs;
}

double spearman_rho_topk(const Ranking& a, const Ranking& b, const TopKParams& params)
{
    const auto [ta, tb] = top_k_prefixes(a, b, params);
    const auto items = union_of(ta, tb);
    const double ell = params.missing_position();
    const auto n = static_cast<Eigen::Index>(items.size());
    Eigen::VectorXd pa(n);
    Eigen::VectorXd pb(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int xa = ta.position(items[i]);
        const int xb = tb.position(items[i]);
        pa(i) = xa == 0 ? ell : xa;
        pb(i) = xb == 0 ? ell : xb;
    }
    return pearson(pa, pb);
}

Measure parse_measure(std::string_view name)
{
    if (name == "kendall") return Measure::kendall;
    if (name == "spearman") return Measure::spearman;
    if (name == "kendall-topk" || name == "kendall_topk") return Measure::kendall_topk;
    if (name == "spearman-topk" || name == "spearman_topk") return Measure::spearman_topk;
    throw ParameterError("unknown measure '" + std::string(name) + "'");
}

std::string_view to_string(Measure measure)
{
    switch (measure) {
    case Measure::kendall: return "kendall";
    case Measure::spearman: return "spearman";
    case Measure::kendall_topk: return "kendall-topk";
    case Measure::spearman_topk: return "spearman-topk";
    }
    return "unknown";
}

double correlate(const Ranking& a, const Ranking& b, Measure measure, const std::optional<TopKParams>& params)
{
    switch (measure) {
    case Measure::kendall: return kendall_tau(a, b);
    case Measure::spearman: return spearman_rho(a, b);
    case Measure::kendall_topk:
    case Measure::spearman_topk:
        if (!params) {
            throw ParameterError("top-k measures need k");
        }
        return measure == Measure::kendall_topk ? kendall_tau_topk(a, b, *params) : spearman_rho_topk(a, b, *params);
    }
    throw ParameterError("unknown measure");
}

PairwiseAverage pairwise_average(const RankingSet& set, Measure measure, const std::optional<TopKParams>& params)
{
    const std::size_t n = set.size();
    if (n < 2) {
        throw ParameterError("pairwise averaging needs at least two rankings");
    }
    // All measures are symmetric, so each unordered pair is evaluated once.
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t z = l + 1; z < n; ++z) {
            double v = 0.0;
            try {
                v = correlate(set[l], set[z], measure, params);
            } catch (const Error& e) {
                throw ParameterError("rankings " + std::to_string(l + 1) + " and " + std::to_string(z + 1) + ": " +
                                     e.what());
            }
            values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(z)) = v;
            values(static_cast<Eigen::Index>(z), static_cast<Eigen::Index>(l)) = v;
        }
    }
    PairwiseAverage out;
    out.measure = measure;
    out.per_ranking.reserve(n);
    std::vector<double> row;
    for (std::size_t l = 0; l < n; ++l) {
        row.clear();
        for (std::size_t z = 0; z < n; ++z) {
            if (z != l) {
                row.push_back(values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(z)));
            }
        }
        out.per_ranking.push_back(compensated_mean(row));
    }
    out.overall = compensated_mean(out.per_ranking);
    return out;
}

}  // namespace rank_consensus
