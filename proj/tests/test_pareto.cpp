#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <cesreduce/config.hpp>
#include <cesreduce/pareto.hpp>

#include "support/oracles.hpp"

using namespace cesreduce;

namespace {

PointSet points_of(const std::vector<std::vector<double>>& ys)
{
    PointSet p{ys.front().size(), {}};
    for (const auto& y : ys) p.push_back(y);
    return p;
}

ScenarioConfig sample_config(std::size_t n)
{
    ScenarioConfig c;
    c.ces = {1.0, 0.5, 1.0};
    c.prices = {1.0, 1.0, 1.0};
    c.grid = {0.1, 10.0, 0.1, 10.0, n, n, GridScale::Logarithmic};
    return c;
}

} // namespace

TEST(Dominates, Examples)
{
    const std::vector<double> a{2, 2}, b{1, 0}, c{0, 1};
    EXPECT_TRUE(dominates(a, b));
    EXPECT_FALSE(dominates(b, a));
    EXPECT_FALSE(dominates(b, c));
    EXPECT_FALSE(dominates(c, b));
    const std::vector<double> d{1, 1};
    EXPECT_FALSE(dominates(d, d));
    const std::vector<double> e{1, 2};
    EXPECT_TRUE(dominates(e, d));
}

TEST(Dominates, LengthMismatchThrows)
{
    const std::vector<double> a{1, 2}, b{1, 2, 3};
    EXPECT_THROW(dominates(a, b), std::invalid_argument);
}

TEST(Filter, SingleDominator)
{
    EXPECT_EQ(nondominated_filter(points_of({{1, 0}, {0, 1}, {2, 2}})), std::vector<std::size_t>{2});
}

TEST(Filter, Antichain)
{
    EXPECT_EQ(nondominated_filter(points_of({{1, 0}, {0, 1}})), (std::vector<std::size_t>{0, 1}));
}

TEST(Filter, DuplicatesSurviveTogether)
{
    EXPECT_EQ(nondominated_filter(points_of({{1, 1}, {1, 1}, {0, 0}})), (std::vector<std::size_t>{0, 1}));
}

TEST(Filter, MatchesNaiveOracleAndIsThreadIndependent)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> U(0, 6);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> ys(300, std::vector<double>(3));
        for (auto& y : ys)
            for (auto& v : y) v = U(rng);
        const auto want = oracle::pareto_indices(ys);
        const auto pts = points_of(ys);
        for (unsigned th : {1u, 2u, 3u, 7u}) {
            const auto got = nondominated_filter(pts, {th});
            EXPECT_EQ(std::set<std::size_t>(got.begin(), got.end()), want) << "threads " << th;
        }
    }
}

TEST(Filter, OrderInvariantAndIdempotent)
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N;
    std::vector<std::vector<double>> ys(400, std::vector<double>(4));
    for (auto& y : ys)
        for (auto& v : y) v = N(rng);
    const auto base = nondominated_filter(points_of(ys));

    std::vector<std::size_t> perm(ys.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> shuffled;
    for (auto i : perm) shuffled.push_back(ys[i]);
    std::set<std::size_t> mapped;
    for (auto i : nondominated_filter(points_of(shuffled))) mapped.insert(perm[i]);
    EXPECT_EQ(mapped, std::set<std::size_t>(base.begin(), base.end()));

    std::vector<std::vector<double>> kept;
    for (auto i : base) kept.push_back(ys[i]);
    EXPECT_EQ(nondominated_filter(points_of(kept)).size(), kept.size());
}

TEST(GridSpecTest, NodesAndIndexing)
{
    const GridSpec g{0.1, 10.0, 1.0, 3.0, 3, 3, GridScale::Logarithmic};
    EXPECT_DOUBLE_EQ(g.node(0).K, 0.1);
    EXPECT_NEAR(g.node(3).K, 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(g.node(8).K, 10.0);
    EXPECT_DOUBLE_EQ(g.node(2).L, 3.0);
    EXPECT_EQ(g.nearest({1.1, 3.0}), 5u);
    const GridSpec lin{1.0, 3.0, 1.0, 3.0, 3, 3, GridScale::Linear};
    EXPECT_DOUBLE_EQ(lin.node(4).K, 2.0);
    EXPECT_DOUBLE_EQ(lin.node(4).L, 2.0);
}

TEST(GridSpecTest, Validation)
{
    EXPECT_TRUE(GridSpec{}.validate().ok());
    EXPECT_FALSE((GridSpec{0.0, 1.0, 0.1, 1.0, 5, 5, GridScale::Logarithmic}.validate().ok()));
    EXPECT_FALSE((GridSpec{2.0, 1.0, 0.1, 1.0, 5, 5, GridScale::Logarithmic}.validate().ok()));
    const auto big = GridSpec{0.1, 1.0, 0.1, 1.0, 600, 600, GridScale::Logarithmic}.validate();
    ASSERT_FALSE(big.ok());
    EXPECT_EQ(big.violations.front().field, "grid");
}

TEST(Oracle, F3KeepsEveryNode)
{
    const auto c = sample_config(20);
    const auto res = oracle_pareto(CriteriaKind::F3, c.pair(), c.problem(), c.grid);
    EXPECT_EQ(res.nondominated.size(), 400u);
}

TEST(Oracle, MatchesDirectCriteriaOnScenarios)
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto c = oracle::random_scenario(seed, 15);
        for (auto kind : {CriteriaKind::G4, CriteriaKind::FBAR4, CriteriaKind::FHAT3}) {
            std::vector<std::vector<double>> ys;
            for (const auto& x : c.grid.nodes()) ys.push_back(oracle::criteria_direct(kind, c, x.K, x.L));
            const auto res = oracle_pareto(kind, c.pair(), c.problem(), c.grid);
            // Direct pow and the ratio form can differ in the last ulp; allow
            // only disagreement on nodes that are near-ties.
            const auto want = oracle::pareto_indices(ys);
            const std::set<std::size_t> got(res.nondominated.begin(), res.nondominated.end());
            std::vector<std::size_t> diff;
            std::set_symmetric_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(diff));
            EXPECT_LE(diff.size(), 2u) << to_string(kind) << " seed " << seed;
        }
    }
}

TEST(Oracle, InclusionChainOnScenarios)
{
    for (std::uint64_t seed = 100; seed < 106; ++seed) {
        const auto c = oracle::random_scenario(seed, 25);
        const auto g = oracle_pareto(CriteriaKind::G4, c.pair(), c.problem(), c.grid);
        const auto fb = oracle_pareto(CriteriaKind::FBAR4, c.pair(), c.problem(), c.grid);
        const auto fh = oracle_pareto(CriteriaKind::FHAT3, c.pair(), c.problem(), c.grid);
        const auto f = oracle_pareto(CriteriaKind::F3, c.pair(), c.problem(), c.grid);
        EXPECT_TRUE(is_subset(g.nondominated, fb.nondominated)) << seed;
        EXPECT_TRUE(is_subset(g.nondominated, fh.nondominated)) << seed;
        EXPECT_EQ(f.nondominated.size(), c.grid.size());
    }
}

TEST(Oracle, SampleG4CardinalityBaseline)
{
    // Regression baseline for the symmetric sample scenario at 50x50. The
    // G4 oracle keeps every node here; see the acceptance suite.
    const auto c = sample_config(50);
    const auto res = oracle_pareto(CriteriaKind::G4, c.pair(), c.problem(), c.grid);
    EXPECT_EQ(res.nondominated.size(), 2500u);
}

TEST(Oracle, RejectsOversizeGrid)
{
    auto c = sample_config(20);
    EXPECT_THROW(oracle_pareto(CriteriaKind::F3, c.pair(), c.problem(), c.grid, 100), std::invalid_argument);
}

TEST(Oracle, G4NeedsBothHold)
{
    auto c = sample_config(10);
    c.quantum1 = {2, 1, 1, {}};
    c.quantum2 = {1, 4, 2, {}};
    EXPECT_THROW(oracle_pareto(CriteriaKind::G4, c.pair(), c.problem(), c.grid), std::invalid_argument);
}
