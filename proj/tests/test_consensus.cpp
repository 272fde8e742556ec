// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "rank_consensus/consensus.hpp"
#include "rank_consensus/errors.hpp"
#include "rank_consensus/io.hpp"

using namespace rank_consensus;
using Catch::Approx;

namespace {

constexpr double kTol = 1e-12;

bool every_ranked_item_has_support(const RankingSet& set, int q)
{
    for (const auto& item : set.universe()) {
        if (support_count(item, item, set) < static_cast<std::size_t>(q)) {
            return false;
        }
    }
    return true;
}

bool no_item_has_support(const RankingSet& set, int q)
{
    for (const auto& item : set.universe()) {
        if (support_count(item, item, set) >= static_cast<std::size_t>(q)) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("worked example plain scores", "[consensus]")
{
    const auto report = score(testing::example_one(), ScoreParams{3});
    REQUIRE(report.per_ranking.size() == 4);
    const std::array<double, 4> k1{1.0, 1.0, 4.0 / 6.0, 1.0};
    const std::array<double, 4> k2{10.0 / 15.0, 10.0 / 15.0, 5.0 / 15.0, 11.0 / 15.0};
    for (std::size_t l = 0; l < 4; ++l) {
        CHECK(report.per_ranking[l].kappa1 == Approx(k1[l]).margin(kTol));
        CHECK(report.per_ranking[l].kappa2 == Approx(k2[l]).margin(kTol));
        CHECK(report.per_ranking[l].n1 == 6);
        CHECK(report.per_ranking[l].n2 == 15);
    }
    CHECK(report.kappa1_bar == Approx(11.0 / 12.0).margin(kTol));
    CHECK(report.kappa2_bar == Approx(0.6).margin(kTol));
    CHECK(display2(report.kappa1_bar) == "0.92");
    CHECK(display2(report.kappa2_bar) == "0.60");
    CHECK(display2(report.per_ranking[3].kappa2) == "0.73");
    CHECK(display2(report.per_ranking[2].kappa1) == "0.67");
    CHECK_NOTHROW(check_invariants(report));
}

TEST_CASE("position and gap deviations on the worked example", "[consensus][deviations]")
{
    const auto set = testing::example_one();
    CHECK(position_deviation("a", 0, set) == Approx(2.0).margin(kTol));
    CHECK(position_deviation("a", 1, set) == Approx(3.0).margin(kTol));
    CHECK(position_deviation("g", 2, set) == 0.0);
    CHECK(*mean_position("a", set) == Approx(3.0).margin(kTol));
    CHECK(*mean_position("b", set) == Approx(1.25).margin(kTol));
    CHECK_FALSE(mean_position("z", set).has_value());

    CHECK(*mean_gap("a", "f", set) == Approx(11.0 / 3.0).margin(kTol));
    CHECK(gap_deviation("a", "f", 0, set) == Approx(4.0 / 3.0).margin(kTol));
    CHECK(gap_deviation("a", "f", 2, set) == Approx(2.0 / 3.0).margin(kTol));
    CHECK(gap_deviation("a", "f", 3, set) == Approx(2.0 / 3.0).margin(kTol));
    CHECK(gap_deviation("g", "h", 2, set) == 0.0);
    CHECK(mean_gap("f", "a", set).has_value());
    CHECK_FALSE(mean_gap("a", "z", set).has_value());
}

TEST_CASE("deviation preconditions", "[consensus][deviations]")
{
    const auto set = testing::example_one();
    CHECK_THROWS_AS(position_deviation("g", 0, set), PreconditionError);
    CHECK_THROWS_AS(gap_deviation("f", "a", 0, set), PreconditionError);
    CHECK_THROWS_AS(gap_deviation("a", "g", 0, set), PreconditionError);
}

TEST_CASE("worked example weighted scores match the brute-force oracle", "[consensus]")
{
    const auto set = testing::example_one();
    // Exact rational mean positions, then the weighted definition (see tests/oracles/weighted_example.py).
    const auto gamma_only = score(set, ScoreParams{3, 0.5, 1.0});
    CHECK(gamma_only.per_ranking[0].kappa1 == Approx(0.6566690703622281).margin(kTol));

    const auto both = score(set, ScoreParams{3, 0.5, 0.5});
    const std::array<double, 4> k1{0.6566690703622281, 0.6073100227735688, 0.49474190067785323, 0.6560512133209536};
    const std::array<double, 4> k2{0.5255603814922211, 0.5123320393924861, 0.17678842574312761, 0.44153185153890145};
    for (std::size_t l = 0; l < 4; ++l) {
        CHECK(both.per_ranking[l].kappa1 == Approx(k1[l]).margin(kTol));
        CHECK(both.per_ranking[l].kappa2 == Approx(k2[l]).margin(kTol));
    }
    // Support sets do not depend on the weights.
    CHECK(both.sets.pairs == score(set, ScoreParams{3}).sets.pairs);
}

TEST_CASE("q = 1 on complete strict sets gives full consensus", "[consensus]")
{
    std::mt19937 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto set = testing::random_complete_strict(rng, 1 + trial % 7, 2 + trial % 6);
        const auto report = score(set, ScoreParams{1});
        CHECK(report.kappa1_bar == 1.0);
        CHECK(report.kappa2_bar == 1.0);
    }
}

TEST_CASE("singleton rankings report kappa2 = 0 with a flag", "[consensus]")
{
    const RankingSet set({Ranking::strict({"a"}), Ranking::strict({"a", "b"})});
    const auto report = score(set, ScoreParams{1});
    CHECK(report.per_ranking[0].singleton);
    CHECK(report.per_ranking[0].kappa2 == 0.0);
    CHECK(report.per_ranking[0].n2 == 0);
    CHECK_FALSE(report.per_ranking[1].singleton);
    CHECK(report.kappa2_bar == 0.5);
}

TEST_CASE("score parameter errors", "[consensus]")
{
    const auto set = testing::example_one();
    CHECK_THROWS_AS(score(set, ScoreParams{0}), ParameterError);
    CHECK_THROWS_AS(score(set, ScoreParams{5}), ParameterError);
    CHECK_THROWS_AS(score(set, ScoreParams{2, 0.0, 1.0}), ParameterError);
    CHECK_THROWS_AS(score(set, ScoreParams{2, 1.0, 1.01}), ParameterError);
    CHECK_THROWS_AS(score_by_counting(set, ScoreParams{2, -1.0, 1.0}), ParameterError);
}

TEST_CASE("tampered reports fail the invariant check", "[consensus]")
{
    auto report = score(testing::example_one(), ScoreParams{3});
    report.per_ranking[1].kappa2 = 1.5;
    CHECK_THROWS_AS(check_invariants(report), InvariantError);
    report = score(testing::example_one(), ScoreParams{3});
    report.kappa1_bar = 0.5;
    CHECK_THROWS_AS(check_invariants(report), InvariantError);
}

TEST_CASE("score properties on random sets", "[consensus][property]")
{
    std::mt19937 rng(314);
    for (int trial = 0; trial < 120; ++trial) {
        const auto set = testing::random_set(rng, {8, 8, true, trial % 2 == 0});
        const int n = static_cast<int>(set.size());
        double prev1 = 2.0;
        double prev2 = 2.0;
        for (int q = 1; q <= n; ++q) {
            const auto plain = score(set, ScoreParams{q});
            const auto counted = score_by_counting(set, ScoreParams{q});
            CHECK_NOTHROW(check_invariants(plain));
            CHECK(plain.kappa1_bar <= prev1);
            CHECK(plain.kappa2_bar <= prev2);
            prev1 = plain.kappa1_bar;
            prev2 = plain.kappa2_bar;
            CHECK(plain.sets.singles == counted.sets.singles);
            CHECK(plain.sets.pairs == counted.sets.pairs);

            // kappa1_bar hits 1 or 0 exactly when every or no item is q-supported.
            CHECK((plain.kappa1_bar == 1.0) == every_ranked_item_has_support(set, q));
            CHECK((plain.kappa1_bar == 0.0) == no_item_has_support(set, q));

            const ScoreParams wp{q, 0.3 + 0.1 * (trial % 7), 0.2 + 0.1 * (trial % 8)};
            const auto weighted = score(set, wp);
            const auto weighted_counted = score_by_counting(set, wp);
            CHECK_NOTHROW(check_invariants(weighted));
            for (std::size_t l = 0; l < set.size(); ++l) {
                CHECK(plain.per_ranking[l].kappa1 == counted.per_ranking[l].kappa1);
                CHECK(plain.per_ranking[l].kappa2 == counted.per_ranking[l].kappa2);
                CHECK(weighted.per_ranking[l].kappa1 == Approx(weighted_counted.per_ranking[l].kappa1).margin(kTol));
                CHECK(weighted.per_ranking[l].kappa2 == Approx(weighted_counted.per_ranking[l].kappa2).margin(kTol));
                CHECK(weighted.per_ranking[l].kappa1 <= plain.per_ranking[l].kappa1);
                CHECK(weighted.per_ranking[l].kappa2 <= plain.per_ranking[l].kappa2);
            }
            const auto unit = score(set, ScoreParams{q, 1.0, 1.0});
            CHECK(unit.kappa1_bar == plain.kappa1_bar);
            CHECK(unit.kappa2_bar == plain.kappa2_bar);
        }
    }
}

TEST_CASE("scores are non-decreasing in the weights", "[consensus][property]")
{
    std::mt19937 rng(2718);
    const std::array<double, 5> grid{0.1, 0.3, 0.5, 0.8, 1.0};
    for (int trial = 0; trial < 40; ++trial) {
        const auto set = testing::random_set(rng, {8, 8, true, true});
        const int q = 1 + trial % static_cast<int>(set.size());
        for (std::size_t g = 1; g < grid.size(); ++g) {
            const auto lower = score(set, ScoreParams{q, grid[g - 1], grid[g - 1]});
            const auto upper = score(set, ScoreParams{q, grid[g], grid[g]});
            for (std::size_t l = 0; l < set.size(); ++l) {
                CHECK(lower.per_ranking[l].kappa1 <= upper.per_ranking[l].kappa1);
                CHECK(lower.per_ranking[l].kappa2 <= upper.per_ranking[l].kappa2);
            }
        }
    }
}

TEST_CASE("consensus extremes on witness sets", "[consensus]")
{
    const RankingSet shared({Ranking::strict({"a", "b"}), Ranking::strict({"b", "a"}), Ranking::strict({"a", "b"})});
    CHECK(score(shared, ScoreParams{3}).kappa1_bar == 1.0);
    CHECK(score(shared, ScoreParams{3}).kappa2_bar == 0.0);
    CHECK(score(shared, ScoreParams{2}).kappa2_bar == Approx(2.0 / 3.0).margin(kTol));

    const RankingSet disjoint({Ranking::strict({"a", "b"}), Ranking::strict({"c", "d"})});
    CHECK(score(disjoint, ScoreParams{2}).kappa1_bar == 0.0);
    CHECK(score(disjoint, ScoreParams{1}).kappa1_bar == 1.0);
}
