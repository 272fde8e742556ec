// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "rank_consensus/correlation.hpp"
#include "rank_consensus/errors.hpp"

using namespace rank_consensus;
using Catch::Approx;

namespace {

constexpr double kTol = 1e-12;

Ranking from_string(const std::string& s)
{
    std::vector<ItemId> items;
    for (const char c : s) {
        items.emplace_back(std::string(1, c));
    }
    return Ranking::strict(std::move(items));
}

// Every order a list can take once its missing items are appended behind it.
std::vector<std::vector<ItemId>> completions(const std::vector<ItemId>& listed, const std::vector<ItemId>& universe)
{
    std::vector<ItemId> rest;
    for (const auto& item : universe) {
        if (std::find(listed.begin(), listed.end(), item) == listed.end()) {
            rest.push_back(item);
        }
    }
    std::sort(rest.begin(), rest.end());
    std::vector<std::vector<ItemId>> out;
    do {
        auto full = listed;
        full.insert(full.end(), rest.begin(), rest.end());
        out.push_back(std::move(full));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

std::set<int> orders(const std::vector<std::vector<ItemId>>& lists, const ItemId& x, const ItemId& y)
{
    std::set<int> seen;
    for (const auto& list : lists) {
        const auto px = std::find(list.begin(), list.end(), x) - list.begin();
        const auto py = std::find(list.begin(), list.end(), y) - list.begin();
        seen.insert(px < py ? 1 : -1);
    }
    return seen;
}

// Pairs whose agreement is the same in every pair of completions score that value, the rest score p.
double topk_tau_by_completion(const Ranking& a, const Ranking& b, std::size_t k, double p)
{
    const auto ta = a.prefix(k);
    const auto tb = b.prefix(k);
    std::vector<ItemId> la(ta.items().begin(), ta.items().end());
    std::vector<ItemId> lb(tb.items().begin(), tb.items().end());
    std::vector<ItemId> universe = la;
    for (const auto& item : lb) {
        if (std::find(universe.begin(), universe.end(), item) == universe.end()) {
            universe.push_back(item);
        }
    }
    const auto ca = completions(la, universe);
    const auto cb = completions(lb, universe);
    double total = 0.0;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        for (std::size_t j = i + 1; j < universe.size(); ++j) {
            std::set<int> products;
            for (const int oa : orders(ca, universe[i], universe[j])) {
                for (const int ob : orders(cb, universe[i], universe[j])) {
                    products.insert(oa * ob);
                }
            }
            total += products.size() == 1 ? *products.begin() : p;
        }
    }
    const double n = static_cast<double>(universe.size());
    return total / (n * (n - 1.0) / 2.0);
}

}  // namespace

TEST_CASE("complete measures on small cases", "[correlation]")
{
    const auto id = from_string("abcd");
    const auto rev = from_string("dcba");
    CHECK(kendall_tau(id, id) == 1.0);
    CHECK(spearman_rho(id, id) == Approx(1.0).margin(kTol));
    CHECK(kendall_tau(id, rev) == -1.0);
    CHECK(spearman_rho(id, rev) == Approx(-1.0).margin(kTol));
    CHECK(kendall_tau(id, from_string("bacd")) == Approx(2.0 / 3.0).margin(kTol));
    CHECK(spearman_rho(from_string("dbca"), id) == Approx(-0.8).margin(kTol));
}

TEST_CASE("top-k Spearman values", "[correlation]")
{
    CHECK(spearman_rho_topk(from_string("ab"), from_string("cd"), {2, 0.0, std::nullopt}) ==
          Approx(-9.0 / 11.0).margin(kTol));
    CHECK(spearman_rho_topk(from_string("abc"), from_string("abd"), {3, 0.0, std::nullopt}) ==
          Approx(0.8).margin(kTol));
    CHECK(spearman_rho_topk(from_string("abcde"), from_string("abdce"), {3, 0.0, std::nullopt}) ==
          Approx(0.8).margin(kTol));
    // Larger ell only moves the missing items further back.
    CHECK(spearman_rho_topk(from_string("ab"), from_string("cd"), {2, 0.0, 10.0}) < 0.0);
}

TEST_CASE("top-k Kendall values", "[correlation]")
{
    const auto a = from_string("ab");
    const auto b = from_string("cd");
    CHECK(kendall_tau_topk(a, b, {2, 1.0, std::nullopt}) == Approx(-1.0 / 3.0).margin(kTol));
    CHECK(kendall_tau_topk(a, b, {2, 0.0, std::nullopt}) == Approx(-2.0 / 3.0).margin(kTol));
    CHECK(kendall_tau_topk(from_string("ab"), from_string("ba"), {2, 0.5, std::nullopt}) == -1.0);
    // One shared item in front, one missing from each side.
    CHECK(kendall_tau_topk(from_string("ab"), from_string("ac"), {2, 0.0, std::nullopt}) ==
          Approx(1.0 / 3.0).margin(kTol));
}

TEST_CASE("top-k Kendall matches the completion enumeration", "[correlation][property]")
{
    std::mt19937 rng(17);
    const auto universe = testing::alphabet(7);
    for (int trial = 0; trial < 300; ++trial) {
        auto la = universe;
        auto lb = universe;
        std::shuffle(la.begin(), la.end(), rng);
        std::shuffle(lb.begin(), lb.end(), rng);
        const auto a = Ranking::strict(la);
        const auto b = Ranking::strict(lb);
        const std::size_t k = 2 + static_cast<std::size_t>(trial % 4);
        const double p = (trial % 5) / 4.0;
        CHECK(kendall_tau_topk(a, b, {k, p, std::nullopt}) == Approx(topk_tau_by_completion(a, b, k, p)).margin(kTol));
    }
}

TEST_CASE("top-k measures reduce to the complete ones", "[correlation][property]")
{
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto set = testing::random_complete_strict(rng, 2, 2 + trial % 7);
        const auto& a = set[0];
        const auto& b = set[1];
        const TopKParams full{a.size(), 0.5, std::nullopt};
        CHECK(kendall_tau_topk(a, b, full) == Approx(kendall_tau(a, b)).margin(kTol));
        CHECK(spearman_rho_topk(a, b, full) == Approx(spearman_rho(a, b)).margin(kTol));
    }
}

TEST_CASE("symmetry and range", "[correlation][property]")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto set = testing::random_complete_strict(rng, 2, 3 + trial % 6);
        const auto& a = set[0];
        const auto& b = set[1];
        const TopKParams tk{2, (trial % 3) / 2.0, std::nullopt};
        for (const auto m : {Measure::kendall, Measure::spearman, Measure::kendall_topk, Measure::spearman_topk}) {
            const double ab = correlate(a, b, m, tk);
            CHECK(ab == Approx(correlate(b, a, m, tk)).margin(kTol));
            CHECK(ab >= -1.0);
            CHECK(ab <= 1.0);
        }
        CHECK(kendall_tau(a, a) == 1.0);
    }
}

TEST_CASE("pairwise averages", "[correlation]")
{
    const RankingSet set({from_string("abcd"), from_string("badc"), from_string("dcab")});
    const auto kendall = pairwise_average(set, Measure::kendall);
    REQUIRE(kendall.per_ranking.size() == 3);
    CHECK(kendall.per_ranking[0] == Approx(-1.0 / 6.0).margin(kTol));
    CHECK(kendall.per_ranking[1] == Approx(-1.0 / 6.0).margin(kTol));
    CHECK(kendall.per_ranking[2] == Approx(-2.0 / 3.0).margin(kTol));
    CHECK(kendall.overall == Approx(-1.0 / 3.0).margin(kTol));

    const auto spearman = pairwise_average(set, Measure::spearman);
    CHECK(spearman.per_ranking[0] == Approx(-0.1).margin(kTol));
    CHECK(spearman.per_ranking[1] == Approx(-0.1).margin(kTol));
    CHECK(spearman.per_ranking[2] == Approx(-0.8).margin(kTol));
    CHECK(spearman.overall == Approx(-1.0 / 3.0).margin(kTol));

    const RankingSet pair({from_string("dcba"), from_string("abcd")});
    CHECK(pairwise_average(pair, Measure::spearman).overall == Approx(-1.0).margin(kTol));
}

TEST_CASE("measure names", "[correlation]")
{
    CHECK(parse_measure("kendall") == Measure::kendall);
    CHECK(parse_measure("spearman_topk") == Measure::spearman_topk);
    CHECK(parse_measure("kendall-topk") == Measure::kendall_topk);
    CHECK(to_string(Measure::spearman_topk) == "spearman-topk");
    CHECK_THROWS_AS(parse_measure("pearson"), ParameterError);
}

TEST_CASE("correlation errors", "[correlation]")
{
    const auto abc = from_string("abc");
    CHECK_THROWS_AS(kendall_tau(abc, from_string("abd")), ParameterError);
    CHECK_THROWS_AS(spearman_rho(abc, from_string("ab")), ParameterError);
    CHECK_THROWS_AS(kendall_tau(from_string("a"), from_string("a")), ParameterError);
    CHECK_THROWS_AS(spearman_rho(from_string("a"), from_string("a")), ParameterError);
    const Ranking tied({TieBlock{"a", "b"}, TieBlock{"c"}});
    CHECK_THROWS_AS(kendall_tau(tied, abc), ParameterError);
    CHECK_THROWS_AS(spearman_rho_topk(abc, tied, {2, 0.0, std::nullopt}), ParameterError);
    CHECK_THROWS_AS(kendall_tau_topk(abc, abc, {4, 0.0, std::nullopt}), ParameterError);
    CHECK_THROWS_AS(kendall_tau_topk(abc, abc, {0, 0.0, std::nullopt}), ParameterError);
    CHECK_THROWS_AS(kendall_tau_topk(abc, abc, {2, 1.5, std::nullopt}), ParameterError);
    CHECK_THROWS_AS(spearman_rho_topk(abc, abc, {2, 0.0, 2.0}), ParameterError);
    CHECK_THROWS_AS(kendall_tau_topk(abc, abc, {1, 0.0, std::nullopt}), ParameterError);
    CHECK_THROWS_AS(correlate(abc, abc, Measure::kendall_topk), ParameterError);
    CHECK_THROWS_AS(pairwise_average(RankingSet({abc}), Measure::kendall), ParameterError);
    CHECK_THROWS_AS(pairwise_average(RankingSet({abc, from_string("abd")}), Measure::kendall), ParameterError);
}
