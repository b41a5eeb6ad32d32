#include "alkspec/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "alkspec/errors.hpp"
#include "alkspec/numeric.hpp"
#include "integrate.hpp"

namespace alkspec {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

int default_steps(const SolverOptions& opts, double rate, double tau) {
    if (opts.initial_steps > 0) return opts.initial_steps;
    return std::max(100, static_cast<int>(std::ceil(50.0 * rate * tau)));
}

}  // namespace

Couplings derive_couplings(const PhysicalParams& phys) {
    if (!(phys.L > 0.0) || !std::isfinite(phys.L)) throw std::invalid_argument("well length L must be positive");
    if (!(phys.omega_perp > 0.0) || !std::isfinite(phys.omega_perp)) {
        throw std::invalid_argument("transverse trap frequency must be positive");
    }
    const double nu_perp = phys.omega_perp / (2.0 * std::numbers::pi);
    const double scale = 4.0 * std::numbers::pi * nu_perp / phys.L;
    Couplings c{scale * phys.a_gg, scale * phys.a_ee, scale * 0.5 * (phys.a_eg_plus + phys.a_eg_minus),
                scale * 0.5 * (phys.a_eg_plus - phys.a_eg_minus)};
    for (double v : {c.U_gg, c.U_ee, c.V, c.V_ex}) {
        if (!std::isfinite(v)) throw std::invalid_argument("derived couplings are not finite");
    }
    return c;
}

SingleAtomState::SingleAtomState(int d) : d_(d), rho_(Eigen::MatrixXcd::Zero(2 * d, 2 * d)) {
    if (d < 1) throw std::invalid_argument("nuclear dimension must be >= 1");
}

SingleAtomState::SingleAtomState(Eigen::MatrixXcd rho) : d_(static_cast<int>(rho.rows() / 2)), rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() % 2 != 0 || rho_.rows() == 0) {
        throw std::invalid_argument("single-atom state must be a square matrix of even dimension");
    }
}

SingleAtomState SingleAtomState::ground(const Spectrum& p) {
    SingleAtomState s(p.dim());
    for (int m = 0; m < p.dim(); ++m) s.at(Electronic::g, m, Electronic::g, m) = p[m];
    return s;
}

Eigen::MatrixXcd SingleAtomState::block(Electronic mu, Electronic nu) const {
    return rho_.block(static_cast<int>(mu) * d_, static_cast<int>(nu) * d_, d_, d_);
}

double SingleAtomState::max_nuclear_coherence() const {
    double worst = 0.0;
    for (int a = 0; a < 2 * d_; ++a)
        for (int b = 0; b < 2 * d_; ++b)
            if (a % d_ != b % d_) worst = std::max(worst, std::abs(rho_(a, b)));
    return worst;
}

double SingleAtomState::min_eigenvalue() const {
    const Eigen::MatrixXcd herm = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

SingleAtomState apply_pulse(const SingleAtomState& state, double beta) {
    const int d = state.d();
    const double c = std::cos(beta / 2), s = std::sin(beta / 2);
    Eigen::MatrixXcd rot = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    for (int m = 0; m < d; ++m) {
        rot(m, m) = c;
        rot(d + m, d + m) = c;
        rot(m, d + m) = -I * s;
        rot(d + m, m) = -I * s;
    }
    return SingleAtomState(Eigen::MatrixXcd(rot * state.matrix() * rot.adjoint()));
}

SingleAtomState dark_evolution(const SingleAtomState& state, const Couplings& couplings, double delta, int n,
                               double tau, const SolverOptions& opts) {
    if (state.max_nuclear_coherence() > 1e-12) {
        throw std::invalid_argument("dark_evolution requires a state diagonal in the nuclear index");
    }
    if (n < 1 || !(tau >= 0.0)) throw std::invalid_argument("dark_evolution requires n >= 1 and tau >= 0");
    const int d = state.d();
    const double nm1 = n - 1;
    SingleAtomState out = state;
    if (tau == 0.0) return out;

    if (couplings.only_gg() && !opts.force_integrator) {
        double total_g = 0.0;
        for (int m = 0; m < d; ++m) total_g += state.at(Electronic::g, m, Electronic::g, m).real();
        for (int m = 0; m < d; ++m) {
            const double others = total_g - state.at(Electronic::g, m, Electronic::g, m).real();
            const double phase = wrap_phase(delta * tau) + wrap_phase(couplings.U_gg * nm1 * others * tau);
            const cd ge = state.at(Electronic::g, m, Electronic::e, m) * std::polar(1.0, -phase);
            out.at(Electronic::g, m, Electronic::e, m) = ge;
            out.at(Electronic::e, m, Electronic::g, m) = std::conj(ge);
        }
        return out;
    }

    // y = [rho_gg^{mm}, rho_ee^{mm}, rho_ge^{mm}] for m = 0..d-1.
    Eigen::VectorXcd y0(3 * d);
    for (int m = 0; m < d; ++m) {
        y0(m) = state.at(Electronic::g, m, Electronic::g, m);
        y0(d + m) = state.at(Electronic::e, m, Electronic::e, m);
        y0(2 * d + m) = state.at(Electronic::g, m, Electronic::e, m);
    }
    const auto rhs = [&](const Eigen::VectorXcd& y) {
        Eigen::VectorXcd dy(3 * d);
        const auto gg = y.segment(0, d), ee = y.segment(d, d), ge = y.segment(2 * d, d);
        const cd sum_gg = gg.sum(), sum_ee = ee.sum(), sum_ge = ge.sum();
        const cd sum_eg = std::conj(sum_ge);
        for (int m = 0; m < d; ++m) {
            const cd eg_m = std::conj(ge(m));
            const cd exchange = I * couplings.V_ex * nm1 * (ge(m) * sum_eg - eg_m * sum_ge);
            dy(m) = exchange;
            dy(d + m) = -exchange;
            const cd others_gg = sum_gg - gg(m), others_ee = sum_ee - ee(m), others_ge = sum_ge - ge(m);
            dy(2 * d + m) = -I * delta * ge(m) - I * couplings.U_gg * nm1 * ge(m) * others_gg +
                            I * couplings.U_ee * nm1 * ge(m) * others_ee -
                            I * couplings.V * nm1 * ge(m) * (others_ee - others_gg) -
                            I * couplings.V_ex * nm1 * (ee(m) - gg(m)) * others_ge;
        }
        return dy;
    };
    const double rate = std::max({std::abs(couplings.U_gg), std::abs(couplings.U_ee), std::abs(couplings.V),
                                  std::abs(couplings.V_ex)}) * n + std::abs(delta);
    const Eigen::VectorXcd y = detail::converge_by_halving(
        default_steps(opts, rate, tau), opts.tolerance, opts.max_refinements,
        [&](int steps) { return detail::rk4(y0, tau, steps, rhs); });

    for (int m = 0; m < d; ++m) {
        out.at(Electronic::g, m, Electronic::g, m) = y(m).real();
        out.at(Electronic::e, m, Electronic::e, m) = y(d + m).real();
        out.at(Electronic::g, m, Electronic::e, m) = y(2 * d + m);
        out.at(Electronic::e, m, Electronic::g, m) = std::conj(y(2 * d + m));
    }
    return out;
}

namespace {

struct ReadoutSums {
    double trace = 0.0;
    double pop_diff = 0.0;  // sum_m (rho_ee - rho_gg)
    cd coh_diff = 0.0;      // sum_m (rho_eg - rho_ge)
};

ReadoutSums readout_sums(const SingleAtomState& state) {
    ReadoutSums s;
    for (int m = 0; m < state.d(); ++m) {
        const double gg = state.at(Electronic::g, m, Electronic::g, m).real();
        const double ee = state.at(Electronic::e, m, Electronic::e, m).real();
        s.trace += gg + ee;
        s.pop_diff += ee - gg;
        s.coh_diff += state.at(Electronic::e, m, Electronic::g, m) - state.at(Electronic::g, m, Electronic::e, m);
    }
    return s;
}

}  // namespace

double measure_ne(const SingleAtomState& state, double beta, bool lossless) {
    const ReadoutSums s = readout_sums(state);
    const double coherence = (-I * s.coh_diff * std::sin(beta)).real();
    if (lossless) return 0.5 * (1.0 - std::cos(beta) * std::cos(beta) + coherence);
    return 0.5 * (s.trace + s.pop_diff * std::cos(beta) + coherence);
}

double normalized_ne(const SingleAtomState& state, double beta) {
    const double tr = state.trace();
    if (!(tr > 0.0)) throw std::invalid_argument("state has no atoms left in the trap");
    return measure_ne(state, beta, false) / tr;
}

SingleAtomState loss_meanfield_evolution(const SingleAtomState& state, const Couplings& couplings, double delta,
                                         double gamma, int n, double tau, const SolverOptions& opts) {
    if (n < 1 || !(tau >= 0.0) || !(gamma >= 0.0)) {
        throw std::invalid_argument("loss evolution requires n >= 1, tau >= 0, gamma >= 0");
    }
    const int d = state.d();
    if (tau == 0.0) return state;
    const double nm1 = n - 1;
    const double pair_count = 0.5 * (n - 1) * (n - 2);
    const double U = couplings.U_gg;

    const auto rhs = [&](const Eigen::MatrixXcd& rho) {
        const Eigen::MatrixXcd G = rho.block(0, 0, d, d);
        const Eigen::MatrixXcd E = rho.block(d, d, d, d);
        const cd tG = G.trace(), tE = E.trace();
        const cd other_pairs = tE * tE - (E * E).trace();
        Eigen::MatrixXcd out(2 * d, 2 * d);
        for (int eta = 0; eta < 2; ++eta) {
            for (int etap = 0; etap < 2; ++etap) {
                const Eigen::MatrixXcd B = rho.block(eta * d, etap * d, d, d);
                Eigen::MatrixXcd D = (I * delta * static_cast<double>(eta - etap)) * B;
                D -= (0.5 * gamma * pair_count) * other_pairs * B;
                if (eta == 0) D -= (I * U * nm1) * (tG * B - G * B);
                if (etap == 0) D += (I * U * nm1) * (tG * B - B * G);
                if (eta == 1) D -= (0.25 * gamma * nm1) * (tE * B - E * B);
                if (etap == 1) D -= (0.25 * gamma * nm1) * (tE * B - B * E);
                out.block(eta * d, etap * d, d, d) = D;
            }
        }
        return out;
    };
    const double rate = std::abs(U) * n + gamma * n * n + std::abs(delta);
    Eigen::MatrixXcd rho = detail::converge_by_halving(
        default_steps(opts, rate, tau), opts.tolerance, opts.max_refinements,
        [&](int steps) { return detail::rk4(Eigen::MatrixXcd(state.matrix()), tau, steps, rhs); });
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (rho.trace().real() > state.trace() + 1e-9) {
        throw SolverError("mean-field loss evolution increased the trace");
    }
    return SingleAtomState(std::move(rho));
}

SignalCurve meanfield_signal(const RamseyParams& params, const Spectrum& p, const SolverOptions& opts) {
    return meanfield_signal(params, p, Couplings{params.U, 0.0, 0.0, 0.0}, opts);
}

SignalCurve meanfield_signal(const RamseyParams& params, const Spectrum& p, const Couplings& couplings,
                             const SolverOptions& opts) {
    params.validate();
    const SingleAtomState opened = apply_pulse(SingleAtomState::ground(p), params.beta);
    SignalCurve curve{params, {}, SignalMethod::meanfield_ode, std::nullopt};
    curve.values.reserve(params.taus.size());
    for (double tau : params.taus) {
        const SingleAtomState dark = dark_evolution(opened, couplings, params.delta, params.n, tau, opts);
        curve.values.push_back(std::clamp(measure_ne(dark, params.beta, couplings.V_ex == 0.0), 0.0, 1.0));
    }
    return curve;
}

std::vector<double> loss_meanfield_signal(const RamseyParams& params, const Spectrum& p, double gamma,
                                          const SolverOptions& opts) {
    params.validate();
    const SingleAtomState opened = apply_pulse(SingleAtomState::ground(p), params.beta);
    std::vector<double> out;
    out.reserve(params.taus.size());
    for (double tau : params.taus) {
        const SingleAtomState dark =
            loss_meanfield_evolution(opened, Couplings{params.U, 0, 0, 0}, params.delta, gamma, params.n, tau, opts);
        out.push_back(normalized_ne(dark, params.beta));
    }
    return out;
}

}  // namespace alkspec
