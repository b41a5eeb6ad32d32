#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "alkspec/oracle.hpp"
#include "alkspec/ramsey.hpp"
#include "oracles.hpp"

using alkspec::RamseyParams;
using alkspec::Spectrum;

namespace {

std::vector<double> grid(double step, int count) {
    std::vector<double> t;
    for (int i = 0; i < count; ++i) t.push_back(i * step);
    return t;
}

RamseyParams params(int n, double beta, double delta, double U, std::vector<double> taus) {
    RamseyParams r;
    r.n = n;
    r.beta = beta;
    r.delta = delta;
    r.U = U;
    r.taus = std::move(taus);
    return r;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST(RamseyParams, Validation) {
    EXPECT_THROW(params(0, 1.0, 0, 1, {0.0}).validate(), std::invalid_argument);
    EXPECT_THROW(params(3, 7.0, 0, 1, {0.0}).validate(), std::invalid_argument);
    EXPECT_THROW(params(3, 1.0, 0, 1, {0.2, 0.1}).validate(), std::invalid_argument);
    EXPECT_THROW(params(3, 1.0, 0, 1, {-0.1}).validate(), std::invalid_argument);
    EXPECT_NO_THROW(params(3, -1.0, 0, 1, {0.0, 0.1}).validate());
    EXPECT_EQ(alkspec::parse_signal_method("meanfield"), alkspec::SignalMethod::meanfield_ode);
    EXPECT_THROW(alkspec::parse_signal_method("bogus"), std::invalid_argument);
}

TEST(BinomWeight, SumsToOne) {
    for (int n : {1, 2, 9, 40}) {
        double total = 0.0;
        for (int w = 0; w < n; ++w) total += alkspec::binom_weight(w, n, 0.7);
        EXPECT_NEAR(total, 1.0, 1e-13);
    }
}

TEST(TraceBw, MatchesDenseSwapExponential) {
    const Spectrum p{0.5, 0.3, 0.2};
    const Eigen::MatrixXcd rho = alkspec::density_matrix(p, Eigen::MatrixXcd::Identity(3, 3));
    for (int n = 1; n <= 5; ++n) {
        for (int w = 0; w < n; ++w) {
            for (double alpha : {0.0, 0.37, 2.1}) {
                const auto expected = oracle::swap_sum_trace(rho, n - w, alpha);
                EXPECT_NEAR(std::abs(alkspec::trace_Bw(n, p, w, alpha) - expected), 0.0, 1e-12)
                    << n << " " << w << " " << alpha;
            }
        }
    }
}

TEST(TraceBw, KernelAgreesWithDirectTrace) {
    const Spectrum p{0.6, 0.3, 0.1};
    const alkspec::ExactSignalModel model(7, 3);
    const auto kernel = model.kernel(p);
    for (int w = 0; w < 7; ++w) {
        for (double alpha : {0.1, 1.3}) {
            EXPECT_NEAR(std::abs(kernel.trace(w, alpha) - alkspec::trace_Bw(7, p, w, alpha)), 0.0, 1e-13);
        }
    }
}

TEST(TraceBw, PhaseConventionIsFixed) {
    EXPECT_EQ(alkspec::branching_phase_sign(), -1);
}

TEST(ExactSignal, PiPulseGivesZero) {
    const auto curve = alkspec::exact_signal(params(6, std::numbers::pi, 0.3, 1.0, grid(0.1, 30)), Spectrum{0.7, 0.3});
    for (double v : curve.values) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(ExactSignal, PureStateIsNonInteracting) {
    const double beta = 1.1, delta = 2.5;
    const auto curve = alkspec::exact_signal(params(8, beta, delta, 3.0, grid(0.05, 60)), Spectrum{1.0, 0.0});
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        const double tau = curve.params.taus[i];
        const double expected = 0.5 * std::pow(std::sin(beta), 2) * (1.0 - std::cos(delta * tau));
        EXPECT_NEAR(curve.values[i], expected, 1e-13);
    }
}

TEST(ExactSignal, ZeroCouplingIsNonInteracting) {
    const double beta = 0.8, delta = 1.7;
    const auto curve = alkspec::exact_signal(params(9, beta, delta, 0.0, grid(0.1, 40)), Spectrum{0.5, 0.3, 0.2});
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        const double expected = 0.5 * std::pow(std::sin(beta), 2) * (1.0 - std::cos(delta * curve.params.taus[i]));
        EXPECT_NEAR(curve.values[i], expected, 1e-13);
    }
}

TEST(ExactSignal, InvariantUnderPulseSignFlip) {
    const Spectrum p{0.6, 0.3, 0.1};
    const auto a = alkspec::exact_signal(params(10, 0.9, 0.4, 1.0, grid(0.03, 80)), p);
    const auto b = alkspec::exact_signal(params(10, -0.9, 0.4, 1.0, grid(0.03, 80)), p);
    EXPECT_LT(max_diff(a.values, b.values), 1e-14);
}

TEST(ExactSignal, MatchesFullHilbertSpace) {
    const Spectrum p{0.6, 0.4};
    const auto r = params(4, 0.7, 0.3, 1.3, grid(0.07, 50));
    const auto exact = alkspec::exact_signal(r, p);
    const auto brute = alkspec::full_hilbert_signal(r, p);
    EXPECT_LT(max_diff(exact.values, brute.values), 1e-12);
}

TEST(ExactSignal, ValuesStayInUnitInterval) {
    const auto curve = alkspec::exact_signal(params(25, 1.2, 0.0, 1.0, grid(0.05, 200)), Spectrum{0.5, 0.3, 0.2});
    for (double v : curve.values) {
        EXPECT_GE(v, -1e-14);
        EXPECT_LE(v, 1.0 + 1e-14);
    }
}

TEST(TruncatedSignal, InfiniteWindowReproducesExact) {
    const Spectrum p{0.7, 0.2, 0.1};
    const auto r = params(20, std::numbers::pi / 2, 0.0, 1.0, grid(0.02, 100));
    const auto exact = alkspec::exact_signal(r, p);
    const auto trunc = alkspec::truncated_signal(r, p, std::numeric_limits<double>::infinity());
    EXPECT_LT(max_diff(exact.values, trunc.values), 1e-13);
    ASSERT_TRUE(trunc.truncation.has_value());
    EXPECT_EQ(trunc.truncation->diagrams_kept, trunc.truncation->diagrams_total);
    EXPECT_NEAR(trunc.truncation->eyd_mass, 1.0, 1e-12);
}

TEST(TruncatedSignal, NarrowWindowReportsLostMass) {
    const Spectrum p{0.7, 0.2, 0.1};
    const auto r = params(40, std::numbers::pi / 2, 0.0, 1.0, grid(0.02, 20));
    const auto trunc = alkspec::truncated_signal(r, p, 1.0);
    ASSERT_TRUE(trunc.truncation.has_value());
    EXPECT_LT(trunc.truncation->diagrams_kept, trunc.truncation->diagrams_total);
    EXPECT_LT(trunc.truncation->eyd_mass, 1.0);
    EXPECT_THROW(alkspec::truncated_signal(r, p, 0.0), std::invalid_argument);
}

TEST(AsymptoticSignal, ClosedForm) {
    const Spectrum p{0.7, 0.3};
    const double beta = 1.0, U = 2.0, delta = 0.5;
    const int n = 30;
    const auto curve = alkspec::asymptotic_signal(params(n, beta, delta, U, grid(0.01, 50)), p);
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        const double tau = curve.params.taus[i];
        double s = 0.0;
        for (int r = 0; r < 2; ++r) {
            const double omega = U * (n - 1) * (1 - p[r]) * std::pow(std::cos(beta / 2), 2) + delta;
            s += p[r] * std::cos(omega * tau);
        }
        EXPECT_NEAR(curve.values[i], 0.5 * std::pow(std::sin(beta), 2) * (1 - s), 1e-14);
    }
}

TEST(AsymptoticSignal, ApproachesExactWithN) {
    const Spectrum p{0.7, 0.2, 0.1};
    double previous = std::numeric_limits<double>::infinity();
    for (int n : {10, 20, 40}) {
        std::vector<double> taus;
        for (int i = 0; i <= 100; ++i) taus.push_back(0.1 * i / n);  // n U tau in [0, 10]
        const auto r = params(n, std::numbers::pi / 2, 0.0, 1.0, taus);
        const double err = max_diff(alkspec::exact_signal(r, p).values, alkspec::asymptotic_signal(r, p).values);
        EXPECT_LT(err, previous);
        previous = err;
    }
}

TEST(MeanfieldVariance, Formula) {
    EXPECT_DOUBLE_EQ(alkspec::meanfield_variance(0.25, 10), 0.25 * 0.75 / 10);
    EXPECT_THROW(alkspec::meanfield_variance(1.5, 10), std::invalid_argument);
}
