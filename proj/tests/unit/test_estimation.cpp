#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "alkspec/estimation.hpp"

using alkspec::MeasurementRecord;
using alkspec::Spectrum;

namespace {

alkspec::RamseyParams params(int n, std::vector<double> taus) {
    alkspec::RamseyParams r;
    r.n = n;
    r.beta = std::numbers::pi / 2;
    r.U = 1.0;
    r.taus = std::move(taus);
    return r;
}

std::vector<double> grid(double step, int count) {
    std::vector<double> t;
    for (int i = 1; i <= count; ++i) t.push_back(i * step);
    return t;
}

double max_diff(const Spectrum& a, const Spectrum& b) {
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r) m = std::max(m, std::abs(a[r] - b[r]));
    return m;
}

}  // namespace

TEST(MeasurementRecord, ConstructionAndValidation) {
    const auto r = MeasurementRecord::from_counts(0.1, 4, {1, 2, 3});
    EXPECT_EQ(r.shots, 3);
    EXPECT_DOUBLE_EQ(r.mean_count, 2.0);
    EXPECT_DOUBLE_EQ(r.fraction(), 0.5);
    EXPECT_THROW(MeasurementRecord::from_counts(0.1, 4, {5}), std::invalid_argument);
    EXPECT_THROW(MeasurementRecord::from_mean(-1.0, 4, 10, 1.0), std::invalid_argument);
    EXPECT_THROW(MeasurementRecord::from_mean(0.1, 4, 0, 1.0), std::invalid_argument);
}

TEST(StickBreaking, RoundTrip) {
    const std::vector<double> p{0.2, 0.5, 0.1, 0.2};
    const auto z = alkspec::stick_breaking_inverse(p);
    ASSERT_EQ(z.size(), 3);
    const auto back = alkspec::stick_breaking(z);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(back[i], p[i], 1e-15);
}

TEST(Simulation, DeterministicAndUnbiased) {
    const Spectrum p{0.7, 0.3};
    const auto r = params(20, {0.05, 0.1});
    const auto a = alkspec::simulate_measurements(r, p, 4000, 9);
    const auto b = alkspec::simulate_measurements(r, p, 4000, 9);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].counts, b[0].counts);
    const auto exact = alkspec::noiseless_measurements(r, p, 4000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double s = exact[i].fraction();
        const double sigma = std::sqrt(s * (1 - s) / (20.0 * 4000));
        EXPECT_NEAR(a[i].fraction(), s, 5 * sigma);
    }
}

TEST(Simulation, ShotVarianceMatchesBinomial) {
    const Spectrum p{0.6, 0.4};
    const auto r = params(30, {0.1});
    const auto rec = alkspec::simulate_measurements(r, p, 20000, 4)[0];
    double mean = 0.0, var = 0.0;
    for (int c : rec.counts) mean += c / 30.0;
    mean /= rec.shots;
    for (int c : rec.counts) var += std::pow(c / 30.0 - mean, 2);
    var /= rec.shots - 1;
    EXPECT_NEAR(var / alkspec::meanfield_variance(mean, 30), 1.0, 0.05);
}

TEST(Simulation, GaussianNoiseStaysInRange) {
    const auto recs = alkspec::simulate_measurements(params(10, {0.0, 0.3}), Spectrum{0.8, 0.2}, 500, 2,
                                                     alkspec::NoiseModel::gaussian);
    for (const auto& rec : recs) {
        for (int c : rec.counts) {
            EXPECT_GE(c, 0);
            EXPECT_LE(c, 10);
        }
    }
}

TEST(FitSpectrum, NoiselessRecoversTruthFromAnyStart) {
    const Spectrum truth{0.6, 0.3, 0.1};
    const auto r = params(12, grid(0.02, 30));
    const auto records = alkspec::noiseless_measurements(r, truth, 100);
    for (const Spectrum& init : {Spectrum{0.34, 0.33, 0.33}, Spectrum{0.5, 0.25, 0.25}}) {
        alkspec::FitOptions opts;
        opts.init = init;
        const auto fit = alkspec::fit_spectrum(records, r, 3, opts);
        EXPECT_TRUE(fit.converged);
        EXPECT_LT(max_diff(fit.p_hat, truth), 1e-7) << fit.p_hat.to_string();
        EXPECT_EQ(fit.taus.size(), r.taus.size());
    }
}

TEST(FitSpectrum, NoisyFitIsConsistentWithCovariance) {
    const Spectrum truth{0.7, 0.2, 0.1};
    const auto r = params(30, grid(0.01, 40));
    const auto records = alkspec::simulate_measurements(r, truth, 200, 17);
    alkspec::FitOptions opts;
    opts.seed = 3;
    const auto fit = alkspec::fit_spectrum(records, r, 3, opts);
    EXPECT_TRUE(fit.converged);
    ASSERT_EQ(fit.covariance.rows(), 3);
    for (int k = 0; k < 3; ++k) {
        const double sigma = std::sqrt(fit.covariance(k, k));
        EXPECT_GT(sigma, 0.0);
        EXPECT_LT(std::abs(fit.p_hat[k] - truth[k]), 5 * sigma + 1e-3) << k;
    }
    // Weighted residual norm per degree of freedom near one.
    EXPECT_NEAR(fit.residual_norm / (40 - 2), 1.0, 0.6);
}

TEST(FitSpectrum, AsymptoticModelOption) {
    const Spectrum truth{0.75, 0.25};
    const auto r = params(40, grid(0.01, 30));
    const auto records = alkspec::noiseless_measurements(r, truth, 100, alkspec::FitModel::asymptotic);
    alkspec::FitOptions opts;
    opts.model = alkspec::FitModel::asymptotic;
    const auto fit = alkspec::fit_spectrum(records, r, 2, opts);
    EXPECT_LT(max_diff(fit.p_hat, truth), 1e-7);
    EXPECT_EQ(fit.model, alkspec::FitModel::asymptotic);
}

TEST(FitSpectrum, RejectsTooFewDarkTimes) {
    const auto r = params(10, {0.1, 0.2});
    const auto records = alkspec::noiseless_measurements(r, Spectrum{0.5, 0.3, 0.2}, 10);
    EXPECT_THROW(alkspec::fit_spectrum(records, r, 3), std::invalid_argument);
}

TEST(EydEstimator, RowLengthsAndBias) {
    const auto est = alkspec::estimate_from_eyd_sample(alkspec::YoungDiagram{6, 3, 1}, 10, 3);
    EXPECT_DOUBLE_EQ(est[0], 0.6);
    EXPECT_DOUBLE_EQ(est[2], 0.1);
    EXPECT_DOUBLE_EQ(alkspec::estimate_from_eyd_sample(alkspec::YoungDiagram{8}, 8, 3)[1], 0.0);
    EXPECT_THROW(alkspec::estimate_from_eyd_sample(alkspec::YoungDiagram{6, 3}, 9, 1), std::invalid_argument);

    // The top row overestimates the largest eigenvalue on average.
    const Spectrum p{0.5, 0.5};
    const auto dist = alkspec::eyd_distribution(20, p);
    double mean = 0.0;
    for (const auto& e : dist.entries) mean += e.prob * alkspec::estimate_from_eyd_sample(e.lambda, 20, 2)[0];
    EXPECT_GT(mean, 0.5);
    EXPECT_LT(mean, 0.7);
}

TEST(Parsing, NoiseAndModelNames) {
    EXPECT_EQ(alkspec::parse_noise_model("gaussian"), alkspec::NoiseModel::gaussian);
    EXPECT_EQ(alkspec::to_string(alkspec::FitModel::exact), "exact");
    EXPECT_THROW(alkspec::parse_fit_model("linear"), std::invalid_argument);
}
