#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "alkspec/ramsey.hpp"
#include "alkspec/spectrum.hpp"

namespace alkspec {

/// Dense density matrix over a recorded Hilbert-space dimension.
struct DenseState {
    Eigen::MatrixXcd rho;

    Eigen::Index dim() const { return rho.rows(); }
    double trace() const { return rho.trace().real(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;
};

/// Haar-random d x d unitary (QR of a complex Gaussian matrix with the
/// phases of R divided out); deterministic in seed.
Eigen::MatrixXcd random_unitary(int d, std::uint64_t seed);

/// V diag(p) V^dagger.
Eigen::MatrixXcd density_matrix(const Spectrum& p, const Eigen::MatrixXcd& basis);

/// Tr(rho^{(x)l} exp(i alpha M)), l = n - w, M = sum_{j<l}(1 - s_{j,l}) as a
/// dense matrix on (C^d)^{(x)l}, with rho diagonal. M preserves the number of
/// atoms in each nuclear state, so it is diagonalized sector by sector.
/// Throws SizeLimitError when d^l > 10^4.
std::complex<double> swap_sum_trace_Bw(int n, int w, const Spectrum& p, double alpha);

/// Same trace for an arbitrary density matrix rho, with the full d^l x d^l
/// matrix exponentiated at once. Throws SizeLimitError when d^l > 1024.
std::complex<double> swap_sum_trace_Bw(int n, int w, const Eigen::MatrixXcd& rho, double alpha);

/// Symmetric n x n matrix of pair couplings; only entries j < k are used.
using CouplingMatrix = Eigen::MatrixXd;

/// Ramsey signal by brute force on (C^2 (x) C^d)^{(x)n}: W, exp(-i tau H_D)
/// and W^dagger applied to every product eigenvector of rho^{(x)n}, H_D
/// diagonalized densely per electronic configuration. Uniform U = params.U
/// when no coupling matrix is given. basis rotates the eigenvectors of rho
/// (identity if absent). Throws SizeLimitError when (2d)^n > 5000.
SignalCurve full_hilbert_signal(const RamseyParams& params, const Spectrum& p,
                                const std::optional<CouplingMatrix>& couplings = std::nullopt,
                                const std::optional<Eigen::MatrixXcd>& basis = std::nullopt);

/// U_jk = U + dU (u_jk - 1/2) with u_jk uniform on [0, 1).
CouplingMatrix random_couplings(int n, double U, double dU, std::mt19937_64& rng);

struct CouplingEnsemble {
    double dU = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> realizations;
    std::vector<double> mean;
    std::vector<double> stddev;
};

/// full_hilbert_signal averaged over random pair couplings.
CouplingEnsemble random_coupling_ensemble(const RamseyParams& params, const Spectrum& p, double dU,
                                          int realizations, std::uint64_t seed);

struct LossPoint {
    double tau = 0.0;
    double ne = 0.0;     ///< <n_e> after the closing pulse
    double n_in = 0.0;   ///< in-trap atom number
    double total = 0.0;  ///< trace over the extended space
    double normalized() const { return n_in > 0.0 ? ne / n_in : 0.0; }
};

struct LindbladOptions {
    int initial_steps = 64;
    double tolerance = 1e-10;
    int max_refinements = 10;
};

/// |G><G| (x) rho^{(x)n} on (C^2 (x) C^d)^{(x)n}; atom k occupies digit k
/// (base 2d) with local index mu * d + m.
DenseState ramsey_initial_state(int n, const Spectrum& p,
                                const std::optional<Eigen::MatrixXcd>& basis = std::nullopt);

/// Ramsey sequence with two-body loss of nuclear-singlet e-e pairs at rate
/// gamma, for d = 2 and n <= 4. Each atom carries a third, inert "out" level;
/// a jump sends the pair's singlet component to |out, out>. The dark-time
/// master equation is integrated in the joint eigenbasis of H_D and the loss
/// operator with an integrating-factor RK4 scheme (exact for gamma = 0).
/// initial is the state before the first pulse.
std::vector<LossPoint> lindblad_loss_evolve(const DenseState& initial, const RamseyParams& params, double gamma,
                                            const LindbladOptions& opts = {});

}  // namespace alkspec
