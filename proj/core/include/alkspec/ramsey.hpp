#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alkspec/eyd.hpp"
#include "alkspec/spectrum.hpp"
#include "alkspec/young.hpp"

namespace alkspec {

/// One Ramsey experiment: n atoms, pulse area beta (rad), detuning delta and
/// ground-ground coupling U (both rad/s, hbar = 1), dark times in seconds.
struct RamseyParams {
    int n = 1;
    double beta = 0.0;
    double delta = 0.0;
    double U = 0.0;
    std::vector<double> taus;

    /// Throws std::invalid_argument. beta is accepted on [-2pi, 2pi]; the
    /// signal depends on it only through sin^2 beta and cos^2(beta/2).
    void validate() const;
};

enum class SignalMethod { exact, truncated, asymptotic, meanfield_ode, oracle };

std::string to_string(SignalMethod m);
SignalMethod parse_signal_method(const std::string& s);

struct TruncationReport {
    double k_sigma = 0.0;
    double eyd_mass = 1.0;  ///< retained sum of Pr(lambda | n, p)
    double w_mass = 1.0;    ///< retained sum of Pr(w | n, beta)
    std::size_t diagrams_kept = 0;
    std::size_t diagrams_total = 0;
};

/// <n_e>/n sampled on params.taus.
struct SignalCurve {
    RamseyParams params;
    std::vector<double> values;
    SignalMethod method = SignalMethod::exact;
    std::optional<TruncationReport> truncation;
};

/// Binomial weight C(n-1, w) cos^{2(n-w-1)}(beta/2) sin^{2w}(beta/2).
double binom_weight(int w, int n, double beta);

/// Normalized trace of B_w = exp(i alpha sum_{j<n-w}(1 - s_{j,n-w})) over
/// the lambda isotypic subspace, evaluated through the restriction of lambda
/// to S_{n-w} (exact branching multiplicities) and the eigenvalue of B_w on
/// each further one-box restriction.
std::complex<double> trace_lambda_Bw(const YoungDiagram& lambda, int w, double alpha, int n);

/// Tr(rho^{(x)n} B_w) as the EYD-weighted sum of trace_lambda_Bw.
std::complex<double> trace_Bw(int n, const Spectrum& p, int w, double alpha);

class PhaseKernel;

/// Young lattice of diagrams with at most d rows, levels n down to
/// min_level, with the one-box removal edges weighted by the dimension ratio
/// |xi^{-r}|/|xi| and labelled by the content xi_r - r of the removed box.
/// Independent of the spectrum and of the dark time.
class BranchingLattice {
public:
    /// keep(level, xi) may prune nodes; pruned nodes drop their weight.
    using KeepFn = std::function<bool(int level, const YoungDiagram&)>;

    BranchingLattice(int n, int d, int min_level = 1, const KeepFn& keep = {});

    int n() const { return n_; }
    int d() const { return d_; }
    int min_level() const { return min_level_; }
    /// Diagrams on the top level (level n), in enumeration order.
    const std::vector<YoungDiagram>& top() const { return top_; }
    std::size_t node_count() const;

    /// Content weights per level: for level l = n - w, entry k + d holds
    /// sum_xi Pr(xi) * |xi^{-r}|/|xi| over removals with content k.
    /// top_weights are Pr(lambda) for top(); when renormalize is set each
    /// level's weights are rescaled to unit total (used after pruning).
    PhaseKernel propagate(std::span<const double> top_weights, bool renormalize) const;

private:
    struct Edge {
        std::size_t child;  // index on the next level down; npos if pruned
        double ratio;
        int content;
    };
    struct Node {
        YoungDiagram diagram;
        std::vector<Edge> edges;
    };

    int n_, d_, min_level_;
    std::vector<YoungDiagram> top_;
    std::vector<std::vector<Node>> levels_;  // levels_[n - l] is level l
};

/// Per-level content weights; evaluates Tr(rho^{(x)n} B_w) for any alpha in
/// O(n) without touching diagrams again.
class PhaseKernel {
public:
    PhaseKernel(int n, int d, int min_level) : n_(n), d_(d), min_level_(min_level), weights_(n + 1) {}

    /// Tr(rho^{(x)n} B_w) = e^{i alpha (l-1)} sum_k W_l[k] e^{-i alpha k}, l = n - w.
    std::complex<double> trace(int w, double alpha) const;
    /// Re{ e^{i delta tau} Tr(rho^{(x)n} B_w) } with the two phases reduced separately.
    double real_part(int w, double alpha, double delta_tau) const;
    bool has_level(int w) const;

private:
    friend class BranchingLattice;
    int n_, d_, min_level_;
    std::vector<std::vector<double>> weights_;  // weights_[l][k + d]
};

/// Exact signal with the EYD model and branching lattice cached, so repeated
/// evaluation at new spectra (as in fitting) only redoes the p-dependent sums.
class ExactSignalModel {
public:
    ExactSignalModel(int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    PhaseKernel kernel(const Spectrum& p) const;
    std::vector<double> evaluate(const RamseyParams& params, const Spectrum& p) const;

private:
    int n_, d_;
    EydModel eyd_;
    BranchingLattice lattice_;
};

/// Finite-n signal: sin^2(beta)/2 [1 - sum_w Pr(w|n,beta) Re{e^{i delta tau} Tr(rho^{(x)n} B_w)}].
SignalCurve exact_signal(const RamseyParams& params, const Spectrum& p);

/// exact_signal restricted to the bulk of the three distributions:
/// diagrams within k_sigma standard deviations of n p per row, w within
/// k_sigma binomial deviations of (n-1) sin^2(beta/2), and restricted
/// diagrams within k_sigma deviations of l p at every level. k_sigma = +inf
/// reproduces exact_signal.
SignalCurve truncated_signal(const RamseyParams& params, const Spectrum& p, double k_sigma = 5.0);

/// Large-n closed form sin^2(beta)/2 [1 - sum_r p_r cos(omega_r tau)],
/// omega_r = U (n-1)(1 - p_r) cos^2(beta/2) + delta.
SignalCurve asymptotic_signal(const RamseyParams& params, const Spectrum& p);

/// Mean-field shot variance (s - s^2)/n of n_e/n.
double meanfield_variance(double signal_value, int n);

/// Branching phase sign used by trace_lambda_Bw and PhaseKernel: -1 unless
/// the library was built as the sign-flipped mutant.
int branching_phase_sign();

}  // namespace alkspec
