#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "alkspec/ramsey.hpp"
#include "alkspec/spectrum.hpp"

namespace alkspec {

/// Trap and collision parameters in SI units. This is the only place SI
/// lengths appear; everything downstream is in rad/s with hbar = 1.
struct PhysicalParams {
    double a_gg = 5.1e-9;
    double a_ee = 0.0;
    double a_eg_plus = 0.0;
    double a_eg_minus = 0.0;
    double omega_perp = 2.0 * 3.14159265358979323846 * 1.0e4;  ///< rad/s
    double L = 10.0e-6;
    double gamma = 0.0;  ///< two-body e-e loss rate, rad/s
};

/// Dark-time couplings in rad/s.
struct Couplings {
    double U_gg = 0.0;
    double U_ee = 0.0;
    double V = 0.0;
    double V_ex = 0.0;

    bool only_gg() const { return U_ee == 0.0 && V == 0.0 && V_ex == 0.0; }
};

/// Couplings 4 pi a nu_perp / L with nu_perp = omega_perp / 2 pi, i.e.
/// 2 a omega_perp / L, for a in {a_gg, a_ee, (a+ + a-)/2, (a+ - a-)/2}.
Couplings derive_couplings(const PhysicalParams& phys);

enum class Electronic : int { g = 0, e = 1 };

/// Single-atom density matrix over electronic (x) nuclear, 2d x 2d, row index
/// mu * d + m.
class SingleAtomState {
public:
    explicit SingleAtomState(int d);
    explicit SingleAtomState(Eigen::MatrixXcd rho);

    /// All population in g with nuclear populations p (eigenbasis of rho).
    static SingleAtomState ground(const Spectrum& p);

    int d() const { return d_; }
    const Eigen::MatrixXcd& matrix() const { return rho_; }
    Eigen::MatrixXcd& matrix() { return rho_; }

    std::complex<double>& at(Electronic mu, int m, Electronic nu, int mp) {
        return rho_(index(mu, m), index(nu, mp));
    }
    std::complex<double> at(Electronic mu, int m, Electronic nu, int mp) const {
        return rho_(index(mu, m), index(nu, mp));
    }
    /// d x d nuclear block rho_{mu nu}.
    Eigen::MatrixXcd block(Electronic mu, Electronic nu) const;

    double trace() const { return rho_.trace().real(); }
    /// Largest |rho^{mm'}_{mu nu}| with m != m'.
    double max_nuclear_coherence() const;
    double hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

private:
    int index(Electronic mu, int m) const { return static_cast<int>(mu) * d_ + m; }

    int d_;
    Eigen::MatrixXcd rho_;
};

struct SolverOptions {
    /// Initial number of RK4 steps; 0 picks max(100, 50 * rate * tau).
    int initial_steps = 0;
    /// Accept when halving the step changes every entry by less than this.
    double tolerance = 1e-11;
    int max_refinements = 14;
    /// Integrate even when the closed-form phase rotation applies.
    bool force_integrator = false;
};

/// Instantaneous rotation exp[-i (beta/2)(sigma_eg + sigma_ge)] (x) 1 applied
/// by conjugation. The closing pulse is apply_pulse(state, -beta).
SingleAtomState apply_pulse(const SingleAtomState& state, double beta);

/// Mean-field dark evolution of the nuclear-diagonal components. With only
/// U_gg nonzero the coherences rotate by a closed-form phase and populations
/// are constant; otherwise the coupled system including U_ee, V and V_ex is
/// integrated with RK4 and step halving until converged.
/// Throws std::invalid_argument if the state carries nuclear coherences and
/// SolverError if the integrator does not converge.
SingleAtomState dark_evolution(const SingleAtomState& state, const Couplings& couplings, double delta, int n,
                               double tau, const SolverOptions& opts = {});

/// <n_e>/n after the closing pulse, from the state at the end of the dark
/// time. With lossless set the populations are taken from the pulse
/// (sum (rho_ee - rho_gg) = -cos beta); otherwise they are read from the state
/// and scaled by its trace.
double measure_ne(const SingleAtomState& state, double beta, bool lossless);

/// <n_e>/<n> after the closing pulse; equals measure_ne for unit trace.
double normalized_ne(const SingleAtomState& state, double beta);

/// Homogeneous mean-field evolution with two-body e-e loss at rate gamma,
/// on the full 2d x 2d matrix. gamma = 0 reproduces the U_gg-only dark
/// evolution. Throws SolverError on non-convergence or if the trace grows.
SingleAtomState loss_meanfield_evolution(const SingleAtomState& state, const Couplings& couplings, double delta,
                                         double gamma, int n, double tau, const SolverOptions& opts = {});

/// Pulse -> dark_evolution -> pulse -> measure for every dark time; U_gg is
/// taken from params.U unless extra couplings are supplied.
SignalCurve meanfield_signal(const RamseyParams& params, const Spectrum& p, const SolverOptions& opts = {});
SignalCurve meanfield_signal(const RamseyParams& params, const Spectrum& p, const Couplings& couplings,
                             const SolverOptions& opts = {});

/// <n_e>/<n> under the mean-field loss model, one value per dark time.
std::vector<double> loss_meanfield_signal(const RamseyParams& params, const Spectrum& p, double gamma,
                                          const SolverOptions& opts = {});

}  // namespace alkspec
