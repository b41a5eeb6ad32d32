#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "alkspec/errors.hpp"
#include "alkspec/oracle.hpp"
#include "alkspec/permutation.hpp"
#include "oracles.hpp"

using alkspec::PermOp;
using alkspec::Spectrum;

namespace {

alkspec::RamseyParams params(int n, double beta, double delta, double U, int count, double step) {
    alkspec::RamseyParams r;
    r.n = n;
    r.beta = beta;
    r.delta = delta;
    r.U = U;
    for (int i = 0; i < count; ++i) r.taus.push_back(i * step);
    return r;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST(PermOp, CyclesAndValidation) {
    const PermOp sigma({1, 2, 0, 4, 3, 5});
    EXPECT_EQ(sigma.cycle_lengths(), (std::vector<int>{3, 2, 1}));
    EXPECT_EQ(PermOp::identity(4).cycle_lengths(), (std::vector<int>{1, 1, 1, 1}));
    EXPECT_THROW(PermOp({0, 0, 1}), std::invalid_argument);
    EXPECT_THROW(PermOp({0, 3}), std::invalid_argument);
}

TEST(PermutationTrace, CycleFormulaMatchesContraction) {
    std::mt19937_64 rng(3);
    const Spectrum p{0.5, 0.3, 0.2};
    const Eigen::MatrixXcd rho = alkspec::density_matrix(p, alkspec::random_unitary(3, 11));
    for (int m = 1; m <= 6; ++m) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto sigma = PermOp::random(m, rng);
            const auto lengths = sigma.cycle_lengths();
            const double cycle = alkspec::permutation_trace(sigma, p);
            EXPECT_NEAR(std::abs(oracle::cycle_trace(lengths, rho) - cycle), 0.0, 1e-14);
            EXPECT_NEAR(std::abs(alkspec::permutation_trace_matrix(sigma, rho) - cycle), 0.0, 1e-14);
        }
    }
    EXPECT_THROW(alkspec::permutation_trace_matrix(PermOp::identity(9), rho), alkspec::SizeLimitError);
}

TEST(RandomUnitary, IsUnitaryAndDeterministic) {
    const auto u = alkspec::random_unitary(4, 5);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ(u, alkspec::random_unitary(4, 5));
    EXPECT_NE(u, alkspec::random_unitary(4, 6));
}

TEST(SwapSum, SectorAndDenseAgreeWithTestOracle) {
    const Spectrum p{0.45, 0.35, 0.2};
    const Eigen::MatrixXcd diag = alkspec::density_matrix(p, Eigen::MatrixXcd::Identity(3, 3));
    const Eigen::MatrixXcd rotated = alkspec::density_matrix(p, alkspec::random_unitary(3, 9));
    for (int l = 1; l <= 4; ++l) {
        for (double alpha : {0.3, 1.9}) {
            const auto expected = oracle::swap_sum_trace(diag, l, alpha);
            EXPECT_NEAR(std::abs(alkspec::swap_sum_trace_Bw(l, 0, p, alpha) - expected), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(alkspec::swap_sum_trace_Bw(l, 0, rotated, alpha) - expected), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(oracle::swap_sum_trace(rotated, l, alpha) - expected), 0.0, 1e-12);
        }
    }
    EXPECT_THROW(alkspec::swap_sum_trace_Bw(11, 0, rotated, 0.1), alkspec::SizeLimitError);
}

TEST(FullHilbert, BasisRotationDoesNotChangeSignal) {
    const Spectrum p{0.5, 0.3, 0.2};
    const auto r = params(3, 0.9, 0.2, 1.0, 30, 0.1);
    const auto plain = alkspec::full_hilbert_signal(r, p);
    const auto rotated = alkspec::full_hilbert_signal(r, p, std::nullopt, alkspec::random_unitary(3, 4));
    EXPECT_LT(max_diff(plain.values, rotated.values), 1e-12);
}

TEST(FullHilbert, SizeCapThrows) {
    EXPECT_THROW(alkspec::full_hilbert_signal(params(7, 1.0, 0.0, 1.0, 2, 0.1), Spectrum{0.5, 0.3, 0.2}),
                 alkspec::SizeLimitError);
}

TEST(CouplingEnsemble, ZeroSpreadIsUniformCoupling) {
    const Spectrum p{0.7, 0.3};
    const auto r = params(3, std::numbers::pi / 2, 0.0, 1.0, 20, 0.1);
    const auto ensemble = alkspec::random_coupling_ensemble(r, p, 0.0, 3, 1);
    const auto single = alkspec::full_hilbert_signal(r, p).values;
    for (std::size_t i = 0; i < single.size(); ++i) {
        EXPECT_NEAR(ensemble.mean[i], single[i], 1e-15);
        EXPECT_LT(ensemble.stddev[i], 1e-15);
    }
    const auto spread = alkspec::random_coupling_ensemble(r, p, 0.5, 4, 1);
    EXPECT_EQ(spread.realizations.size(), 4u);
    EXPECT_GT(*std::max_element(spread.stddev.begin(), spread.stddev.end()), 0.0);
}

TEST(RandomCouplings, SymmetricWithinBand) {
    std::mt19937_64 rng(2);
    const auto u = alkspec::random_couplings(5, 1.0, 0.2, rng);
    for (int j = 0; j < 5; ++j) {
        for (int k = j + 1; k < 5; ++k) {
            EXPECT_GE(u(j, k), 0.9);
            EXPECT_LT(u(j, k), 1.1);
        }
    }
}

TEST(InitialState, IsValidDensityMatrix) {
    const auto s = alkspec::ramsey_initial_state(2, Spectrum{0.6, 0.4}, alkspec::random_unitary(2, 1));
    EXPECT_EQ(s.dim(), 16);
    EXPECT_NEAR(s.trace(), 1.0, 1e-14);
    EXPECT_LT(s.hermiticity_error(), 1e-15);
    EXPECT_GT(s.min_eigenvalue(), -1e-14);
}

TEST(Lindblad, LosslessMatchesFullHilbert) {
    const Spectrum p{0.7, 0.3};
    const auto r = params(3, 0.8, 0.1, 1.0, 11, 0.2);
    const auto points = alkspec::lindblad_loss_evolve(alkspec::ramsey_initial_state(3, p), r, 0.0);
    const auto brute = alkspec::full_hilbert_signal(r, p);
    ASSERT_EQ(points.size(), r.taus.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        EXPECT_NEAR(points[i].normalized(), brute.values[i], 1e-9);
        EXPECT_NEAR(points[i].n_in, 3.0, 1e-9);
    }
}

TEST(Lindblad, NoPulseGivesNoExcitation) {
    const auto r = params(2, 0.0, 0.0, 1.0, 6, 0.3);
    for (const auto& pt : alkspec::lindblad_loss_evolve(alkspec::ramsey_initial_state(2, Spectrum{0.5, 0.5}), r, 1.0)) {
        EXPECT_NEAR(pt.ne, 0.0, 1e-12);
        EXPECT_NEAR(pt.n_in, 2.0, 1e-12);
    }
}

TEST(Lindblad, LossConservesTotalTraceAndRemovesAtoms) {
    const auto r = params(4, std::numbers::pi / 4, 0.0, 1.0, 6, 0.4);
    const auto points = alkspec::lindblad_loss_evolve(alkspec::ramsey_initial_state(4, Spectrum{0.5, 0.5}), r, 0.5);
    double previous = 4.0;
    for (const auto& pt : points) {
        EXPECT_NEAR(pt.total, 1.0, 1e-9);
        EXPECT_LE(pt.n_in, previous + 1e-9);
        previous = pt.n_in;
    }
    EXPECT_LT(points.back().n_in, 4.0);
    EXPECT_THROW(alkspec::lindblad_loss_evolve(alkspec::ramsey_initial_state(2, Spectrum{0.5, 0.3, 0.2}), r, 0.5),
                 std::invalid_argument);
}
