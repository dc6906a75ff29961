#include <gtest/gtest.h>

#include <random>

#include <cesreduce/quanta.hpp>

using namespace cesreduce;

namespace {

const EconomicProblem kUnit{{1.0, 0.5, 1.0}, {1.0, 1.0, 1.0}};
const PreferencePair kSample({2, 2, 1, std::nullopt}, {1, 1, 3, std::nullopt});

void expect_vec(const std::vector<double>& got, const std::vector<double>& want)
{
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_DOUBLE_EQ(got[i], want[i]) << "component " << i;
}

} // namespace

TEST(QuantumVector, FirstQuantum) { expect_vec(quantum_vector(kSample.as_quantum(1), 3), {2, 2, -1}); }

TEST(QuantumVector, SecondQuantum) { expect_vec(quantum_vector(kSample.as_quantum(2), 3), {-1, -1, 3}); }

TEST(QuantumVector, ZeroPadding)
{
    Quantum q{{1}, {2}, {{1, 5.0}, {2, 4.0}}, std::nullopt};
    expect_vec(quantum_vector(q, 4), {5, -4, 0, 0});
}

TEST(QuantumVector, SignCountsMatchGroups)
{
    Quantum q{{1, 4}, {2, 5, 6}, {{1, 1.0}, {2, 2.0}, {4, 3.0}, {5, 0.5}, {6, 7.0}}, 0.3};
    const auto y = quantum_vector(q, 7);
    int pos = 0, neg = 0, zero = 0;
    for (double v : y) (v > 0 ? pos : v < 0 ? neg : zero)++;
    EXPECT_EQ(pos, 2);
    EXPECT_EQ(neg, 3);
    EXPECT_EQ(zero, 2);
}

TEST(QuantumVector, RejectsMalformedGroups)
{
    EXPECT_THROW(quantum_vector(Quantum{{}, {2}, {{2, 1.0}}, {}}, 3), std::invalid_argument);
    EXPECT_THROW(quantum_vector(Quantum{{1}, {1}, {{1, 1.0}}, {}}, 3), std::invalid_argument);
    EXPECT_THROW(quantum_vector(Quantum{{1}, {4}, {{1, 1.0}, {4, 1.0}}, {}}, 3), std::out_of_range);
    EXPECT_THROW(quantum_vector(Quantum{{1}, {2}, {{1, 1.0}, {2, 0.0}}, {}}, 3), std::invalid_argument);
    EXPECT_THROW(quantum_vector(Quantum{{1}, {2}, {{1, 1.0}, {2, 1.0}}, 1.5}, 3), std::invalid_argument);
}

TEST(PreferencePairTest, RejectsNonPositiveWeights)
{
    EXPECT_THROW(PreferencePair({0, 1, 1, {}}, {1, 1, 3, {}}), std::invalid_argument);
    EXPECT_THROW(PreferencePair({1, 1, 1, {}}, {1, 1, 3, 2.0}), std::invalid_argument);
}

TEST(Consistency, Examples)
{
    EXPECT_EQ(check_consistency(kSample), Consistency::BothHold);
    EXPECT_EQ(check_consistency(PreferencePair({2, 1, 1, {}}, {1, 4, 2, {}})), Consistency::FirstOnly);
    EXPECT_EQ(check_consistency(PreferencePair({1, 1, 2, {}}, {2, 2, 1, {}})), Consistency::Inconsistent);
    EXPECT_EQ(check_consistency(PreferencePair({1, 2, 1, {}}, {4, 1, 2, {}})), Consistency::SecondOnly);
    EXPECT_STREQ(to_string(Consistency::BothHold), "bothHold");
    EXPECT_STREQ(to_string(Consistency::FirstOnly), "firstOnly");
}

TEST(Consistency, ViolationsNameTheInequality)
{
    const auto v = consistency_violations(PreferencePair({2, 1, 1, {}}, {1, 4, 2, {}}));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], kConsistencySecond);
    EXPECT_TRUE(consistency_violations(kSample).empty());
}

TEST(NaturalCompromise, Examples)
{
    EXPECT_TRUE(check_natural_compromise(kSample).empty());
    const auto v = check_natural_compromise(PreferencePair({1, 2, 1, {}}, {1, 1, 3, {}}));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], "w1(1) > w3(1)");
}

TEST(NaturalCompromise, ImpliesBothHold)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.01, 10.0);
    int checked = 0;
    while (checked < 10000) {
        const WeightTriple u{U(rng), U(rng), U(rng), {}};
        const WeightTriple v{U(rng), U(rng), U(rng), {}};
        const PreferencePair p(u, v);
        if (!check_natural_compromise(p).empty()) continue;
        ++checked;
        ASSERT_EQ(check_consistency(p), Consistency::BothHold);
    }
}

TEST(CriteriaKindTest, NamesAndCounts)
{
    for (auto k : {CriteriaKind::F3, CriteriaKind::G4, CriteriaKind::FBAR4, CriteriaKind::FHAT3})
        EXPECT_EQ(parse_criteria_kind(to_string(k)), k);
    EXPECT_EQ(component_count(CriteriaKind::G4), 4u);
    EXPECT_EQ(component_count(CriteriaKind::FBAR4), 4u);
    EXPECT_EQ(component_count(CriteriaKind::FHAT3), 3u);
    EXPECT_EQ(component_count(CriteriaKind::F3), 3u);
    EXPECT_THROW(parse_criteria_kind("G5"), std::invalid_argument);
}

TEST(BuildG, Examples)
{
    const CriteriaVector f{-6, -4, 10};
    expect_vec(build_g(kSample, kUnit).evaluate_from(f), {14, 16, -8, -2});
}

TEST(BuildG, RequiresBothHold)
{
    EXPECT_THROW(build_g(PreferencePair({2, 1, 1, {}}, {1, 4, 2, {}}), kUnit), std::invalid_argument);
}

TEST(BuildFbar, Examples)
{
    expect_vec(build_fbar(kSample, kUnit).evaluate_from({-6, -4, 10}), {-6, -4, 14, 16});
    expect_vec(build_fbar(kSample, kUnit).evaluate_from({-1, -1, 1}), {-1, -1, 1, 1});
}

TEST(BuildFhat, Examples)
{
    expect_vec(build_fhat(kSample, kUnit).evaluate_from({-6, -4, 10}), {-8, -2, 10});
    expect_vec(build_fhat(kSample, kUnit).evaluate_from({-1, -1, 1}), {-2, -2, 1});
}

TEST(BuildF, EvaluatesCriteria) { expect_vec(build_f(kUnit)({1.0, 1.0}), {-1, -1, 1}); }

class DerivedProperties : public ::testing::TestWithParam<CriteriaKind> {};

TEST_P(DerivedProperties, PositivelyHomogeneous)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    const EconomicProblem prob{{1.3, 0.4, 0.7}, {1.2, 0.7, 2.1}};
    const auto crit = build_criteria(GetParam(), kSample, prob);
    for (int i = 0; i < 500; ++i) {
        const ResourceBundle x{std::exp(U(rng)), std::exp(U(rng))};
        const double t = std::exp(U(rng));
        const auto a = crit({t * x.K, t * x.L});
        const auto b = crit(x);
        for (std::size_t c = 0; c < a.size(); ++c)
            EXPECT_LE(std::abs(a[c] - t * b[c]), 1e-10 * std::max(1.0, std::abs(t * b[c])));
    }
}

TEST_P(DerivedProperties, MidpointConcave)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    const EconomicProblem prob{{1.3, 0.4, 0.7}, {1.2, 0.7, 2.1}};
    const auto crit = build_criteria(GetParam(), kSample, prob);
    for (int i = 0; i < 500; ++i) {
        const ResourceBundle x{std::exp(U(rng)), std::exp(U(rng))};
        const ResourceBundle y{std::exp(U(rng)), std::exp(U(rng))};
        const auto m = crit({0.5 * (x.K + y.K), 0.5 * (x.L + y.L)});
        const auto a = crit(x);
        const auto b = crit(y);
        for (std::size_t c = 0; c < m.size(); ++c) {
            const double avg = 0.5 * (a[c] + b[c]);
            EXPECT_GE(m[c], avg - 1e-12 * std::max(1.0, std::abs(avg)));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, DerivedProperties,
                         ::testing::Values(CriteriaKind::F3, CriteriaKind::G4, CriteriaKind::FBAR4,
                                           CriteriaKind::FHAT3),
                         [](const auto& info) { return std::string(to_string(info.param)); });
