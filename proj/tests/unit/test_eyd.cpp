#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "alkspec/eyd.hpp"
#include "oracles.hpp"

using alkspec::Spectrum;
using alkspec::YoungDiagram;

TEST(Spectrum, ValidatesAndNormalizes) {
    EXPECT_THROW(Spectrum({0.3, 0.7}), std::invalid_argument);
    EXPECT_THROW(Spectrum({0.7, 0.2}), std::invalid_argument);
    EXPECT_THROW(Spectrum({1.2, -0.2}), std::invalid_argument);
    const auto p = Spectrum::normalized({1.0, 3.0});
    EXPECT_DOUBLE_EQ(p[0], 0.75);
    EXPECT_DOUBLE_EQ(p[1], 0.25);
    EXPECT_DOUBLE_EQ(Spectrum::uniform(4)[3], 0.25);
}

TEST(Eyd, MatchesBialternantOracle) {
    const Spectrum p{0.55, 0.3, 0.15};
    for (int n = 1; n <= 12; ++n) {
        const auto dist = alkspec::eyd_distribution(n, p);
        for (const auto& e : dist.entries) {
            EXPECT_NEAR(e.prob, oracle::eyd_probability(e.lambda.rows(), p.vector()), 1e-12) << e.lambda.to_string();
        }
    }
}

TEST(Eyd, SchurRouteAgreesWithKostkaRoute) {
    const Spectrum p{0.6, 0.25, 0.1, 0.05};
    const int n = 14;
    const auto dist = alkspec::eyd_distribution(n, p);
    const auto diagrams = alkspec::enumerate_diagrams(n, 4);
    const auto logs = alkspec::eyd_log_probabilities_schur(diagrams, p);
    ASSERT_EQ(logs.size(), dist.entries.size());
    for (std::size_t i = 0; i < logs.size(); ++i) EXPECT_NEAR(std::exp(logs[i]), dist.entries[i].prob, 1e-13);
}

TEST(Eyd, NormalizedWithDegenerateAndZeroEigenvalues) {
    for (const Spectrum& p : {Spectrum{0.5, 0.5}, Spectrum{1.0, 0.0, 0.0}, Spectrum{0.4, 0.3, 0.3}, Spectrum::uniform(4)}) {
        for (int n : {1, 5, 20}) EXPECT_NEAR(alkspec::eyd_distribution(n, p).total(), 1.0, 1e-12) << p.to_string();
    }
    const auto pure = alkspec::eyd_distribution(6, Spectrum{1.0, 0.0});
    EXPECT_DOUBLE_EQ(pure.mode().prob, 1.0);
    EXPECT_EQ(pure.mode().lambda, YoungDiagram{6});
}

TEST(Eyd, QubitClosedFormMatchesMarginal) {
    for (int n : {1, 4, 7, 12}) {
        for (double q : {0.5, 0.8, 1.0}) {
            const auto dist = alkspec::eyd_distribution(n, Spectrum{q, 1.0 - q});
            for (const auto& e : dist.entries) {
                const double S = 0.5 * (e.lambda.row(1) - e.lambda.row(2));
                EXPECT_NEAR(alkspec::eyd_qubit(S, n, q), e.prob, 1e-13);
            }
        }
    }
    EXPECT_THROW(alkspec::eyd_qubit(0.5, 4, 0.7), std::invalid_argument);
    EXPECT_THROW(alkspec::eyd_qubit(3.0, 4, 0.7), std::invalid_argument);
}

TEST(Eyd, LargeNStaysFiniteAndConcentrates) {
    const Spectrum p{0.7, 0.2, 0.1};
    const auto dist = alkspec::eyd_distribution(60, p);
    EXPECT_NEAR(dist.total(), 1.0, 1e-12);
    double mean_row1 = 0.0;
    for (const auto& e : dist.entries) {
        EXPECT_TRUE(std::isfinite(e.prob));
        mean_row1 += e.prob * e.lambda.row(1);
    }
    EXPECT_NEAR(mean_row1 / 60.0, 0.7, 0.05);
}

TEST(Eyd, ModelSubsetAndLookup) {
    const alkspec::EydModel model(6, 2);
    EXPECT_EQ(model.index_of(YoungDiagram{6}), 0u);
    EXPECT_THROW(model.index_of(YoungDiagram{4, 1, 1}), std::invalid_argument);
    const alkspec::EydModel subset(6, 2, {YoungDiagram{5, 1}, YoungDiagram{3, 3}});
    const Spectrum p{0.6, 0.4};
    EXPECT_NEAR(subset.probability(1, p), alkspec::eyd_probability(YoungDiagram{3, 3}, 6, p), 1e-15);
    EXPECT_THROW(alkspec::EydModel(6, 2, {YoungDiagram{3, 3}, YoungDiagram{5, 1}}), std::invalid_argument);
}

TEST(Eyd, SamplingIsDeterministicAndFollowsProbabilities) {
    const auto dist = alkspec::eyd_distribution(5, Spectrum{0.6, 0.4});
    const auto a = alkspec::sample_eyd(dist, 20000, 7);
    EXPECT_EQ(a, alkspec::sample_eyd(dist, 20000, 7));
    std::map<YoungDiagram, int> counts;
    for (const auto& l : a) ++counts[l];
    for (const auto& e : dist.entries) {
        const double sigma = std::sqrt(e.prob * (1 - e.prob) / 20000.0);
        EXPECT_NEAR(counts[e.lambda] / 20000.0, e.prob, 5 * sigma + 1e-12) << e.lambda.to_string();
    }
}

TEST(Eyd, TrapEnergyKnownValues) {
    EXPECT_DOUBLE_EQ(alkspec::trap_energy(YoungDiagram{4}, 4), 0.0);
    EXPECT_DOUBLE_EQ(alkspec::trap_energy(YoungDiagram{1, 1, 1, 1}, 4), 12.0);
    EXPECT_DOUBLE_EQ(alkspec::trap_energy(YoungDiagram{2, 2}, 4), 6.0);
    EXPECT_THROW(alkspec::trap_energy(YoungDiagram{2, 2}, 5), std::invalid_argument);
}
