#include "alkspec/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "alkspec/estimation.hpp"
#include "alkspec/eyd.hpp"
#include "alkspec/meanfield.hpp"
#include "alkspec/oracle.hpp"
#include "alkspec/permutation.hpp"
#include "alkspec/ramsey.hpp"

namespace alkspec {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Spectrum random_spectrum(int d, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(static_cast<std::size_t>(d));
    for (double& x : w) x = expo(rng);
    return Spectrum::normalized(std::move(w));
}

std::vector<double> linear_grid(double start, double step, int count) {
    std::vector<double> taus(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) taus[static_cast<std::size_t>(i)] = start + step * i;
    return taus;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// Dark times covering two periods of the slowest mean-field frequency.
std::vector<double> two_collapse_periods(int n, double U, double beta, const Spectrum& p, int count) {
    const double c2 = std::pow(std::cos(beta / 2), 2);
    const double slowest = U * (n - 1) * (1.0 - p[0]) * c2;
    return linear_grid(0.0, 2.0 * (2.0 * kPi / slowest) / count, count);
}

struct Outcome {
    bool passed;
    double max_error;
    double tolerance;
    std::string detail;
};

Outcome oracle_equivalence(const AcceptanceOptions& opts, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> sizes = {{2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3}, {3, 3}, {4, 3}};
    if (opts.quick) sizes = {{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}};
    const int sets = opts.quick ? 3 : 10;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    int curves = 0;
    for (auto [n, d] : sizes) {
        for (int s = 0; s < sets; ++s) {
            const Spectrum p = random_spectrum(d, rng);
            RamseyParams params;
            params.n = n;
            params.beta = 0.1 + (kPi - 0.2) * uni(rng);
            params.U = 0.5 + 1.5 * uni(rng);
            params.delta = -1.0 + 2.0 * uni(rng);
            const double span = (5.0 + 15.0 * uni(rng)) / (n * params.U);
            params.taus = linear_grid(0.0, span / 15, 16);
            const auto basis = (s % 2 == 1) ? std::optional(random_unitary(d, rng())) : std::nullopt;
            const auto exact = exact_signal(params, p).values;
            const auto oracle = full_hilbert_signal(params, p, std::nullopt, basis).values;
            worst = std::max(worst, max_abs_diff(exact, oracle));
            ++curves;
        }
    }
    return {worst <= 1e-9, worst, 1e-9, std::to_string(curves) + " curves"};
}

Outcome branching_trace(const AcceptanceOptions& opts, std::mt19937_64& rng) {
    const int n_max = opts.quick ? 4 : 8;
    std::uniform_real_distribution<double> alpha_dist(-kPi, kPi);
    double worst = 0.0;
    int evaluations = 0;
    for (int d = 1; d <= 3; ++d) {
        for (int n = 1; n <= n_max; ++n) {
            const ExactSignalModel model(n, d);
            for (int s = 0; s < 5; ++s) {
                const Spectrum p = random_spectrum(d, rng);
                const double alpha = alpha_dist(rng);
                const PhaseKernel kernel = model.kernel(p);
                for (int w = 0; w < n; ++w) {
                    const auto oracle = swap_sum_trace_Bw(n, w, p, alpha);
                    worst = std::max(worst, std::abs(trace_Bw(n, p, w, alpha) - oracle));
                    worst = std::max(worst, std::abs(kernel.trace(w, alpha) - oracle));
                    ++evaluations;
                }
            }
        }
    }
    return {worst <= 1e-12, worst, 1e-12, std::to_string(evaluations) + " (n, w, p, alpha) points"};
}

Outcome permutation_traces(const AcceptanceOptions&, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> m_dist(1, 7), d_dist(1, 3);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int m = m_dist(rng), d = d_dist(rng);
        const PermOp sigma = PermOp::random(m, rng);
        const Spectrum p = random_spectrum(d, rng);
        const Eigen::MatrixXcd rho = density_matrix(p, random_unitary(d, rng()));
        worst = std::max(worst, std::abs(permutation_trace_matrix(sigma, rho) - permutation_trace(sigma, p)));
    }
    return {worst <= 1e-12, worst, 1e-12, "100 permutations"};
}

Outcome meanfield_consistency(const AcceptanceOptions&, std::mt19937_64&) {
    const Spectrum p{0.7, 0.2, 0.1};
    double worst = 0.0;
    for (int n : {10, 30}) {
        RamseyParams params;
        params.n = n;
        params.beta = kPi / 2;
        params.U = 1.0;
        params.taus = two_collapse_periods(n, params.U, params.beta, p, 200);
        const auto closed = asymptotic_signal(params, p).values;
        SolverOptions integrate;
        integrate.force_integrator = true;
        worst = std::max(worst, max_abs_diff(closed, meanfield_signal(params, p, integrate).values));
        worst = std::max(worst, max_abs_diff(closed, meanfield_signal(params, p).values));
    }
    return {worst <= 1e-8, worst, 1e-8, "n in {10, 30}, integrator and closed-form phase"};
}

Outcome asymptotic_convergence(const AcceptanceOptions&, std::mt19937_64&) {
    const Spectrum p{0.8, 0.2};
    const auto deviation = [&](int n) {
        RamseyParams params;
        params.n = n;
        params.beta = kPi / 2;
        params.U = 1.0;
        // Fixed grid in n U tau from 0 to 20.
        params.taus = linear_grid(0.0, 20.0 / (200.0 * n), 201);
        return max_abs_diff(exact_signal(params, p).values, asymptotic_signal(params, p).values);
    };
    const double d10 = deviation(10), d40 = deviation(40);
    const double ratio = d40 / d10;
    char buf[96];
    std::snprintf(buf, sizeof buf, "D(10)=%.4g D(40)=%.4g", d10, d40);
    return {ratio <= 0.8, ratio, 0.8, buf};
}

Outcome energy_degeneracy(const AcceptanceOptions&, std::mt19937_64&) {
    const auto diagrams = enumerate_diagrams(6, 3);
    std::vector<double> energies;
    for (const auto& lambda : diagrams) energies.push_back(trap_energy(lambda, 6));
    std::vector<double> sorted = energies;
    std::sort(sorted.begin(), sorted.end());
    const std::vector<double> expected = {0, 6, 10, 12, 12, 15, 18};
    double worst = diagrams.size() == 7 ? 0.0 : std::numeric_limits<double>::infinity();
    if (sorted.size() == expected.size()) worst = std::max(worst, max_abs_diff(sorted, expected));
    int degenerate_pairs = 0;
    bool right_pair = false;
    for (std::size_t a = 0; a < diagrams.size(); ++a) {
        for (std::size_t b = a + 1; b < diagrams.size(); ++b) {
            if (std::abs(energies[a] - energies[b]) > 1e-12) continue;
            ++degenerate_pairs;
            const std::vector<YoungDiagram> pair = {diagrams[a], diagrams[b]};
            right_pair = std::find(pair.begin(), pair.end(), YoungDiagram{4, 1, 1}) != pair.end() &&
                         std::find(pair.begin(), pair.end(), YoungDiagram{3, 3}) != pair.end();
        }
    }
    const bool ok = worst <= 1e-12 && degenerate_pairs == 1 && right_pair;
    return {ok, worst, 1e-12,
            std::to_string(diagrams.size()) + " diagrams, " + std::to_string(degenerate_pairs) + " degenerate pair(s)"};
}

Outcome eyd_normalization(const AcceptanceOptions& opts, std::mt19937_64& rng) {
    const int n_max = opts.quick ? 12 : 30;
    double worst = 0.0;
    for (int d = 1; d <= 3; ++d) {
        for (int n = 1; n <= n_max; ++n) {
            const EydModel model(n, d);
            for (const Spectrum& p : {random_spectrum(d, rng), Spectrum::uniform(d)}) {
                worst = std::max(worst, std::abs(model.distribution(p).total() - 1.0));
            }
        }
    }
    const EydDistribution big = eyd_distribution(300, Spectrum{0.8, 0.2});
    const double estimate = estimate_from_eyd_sample(big.mode().lambda, 300, 2)[0];
    const double mode_error = std::abs(estimate - 0.8);
    char buf[96];
    std::snprintf(buf, sizeof buf, "mode estimate %.4f (|error| %.3g <= 0.03)", estimate, mode_error);
    return {worst <= 1e-10 && mode_error <= 0.03, worst, 1e-10, buf};
}

Outcome shot_variance(const AcceptanceOptions&, std::mt19937_64& rng) {
    const Spectrum p{0.7, 0.2, 0.1};
    RamseyParams params;
    params.n = 30;
    params.beta = kPi / 2;
    params.U = 1.0;
    params.taus = {0.02, 0.05, 0.09, 0.14, 0.2};
    const auto s = exact_signal(params, p).values;
    const auto records = simulate_measurements(params, p, 10000, rng(), NoiseModel::binomial);
    double worst = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        double mean = 0.0, var = 0.0;
        for (int c : records[i].counts) mean += c;
        mean /= records[i].shots;
        for (int c : records[i].counts) var += (c - mean) * (c - mean);
        var /= records[i].shots - 1;
        const double expected = params.n * (s[i] - s[i] * s[i]);
        worst = std::max(worst, std::abs(var / expected - 1.0));
    }
    return {worst <= 0.05, worst, 0.05, "relative variance error, 5 dark times, 10^4 shots"};
}

Outcome round_trip(const AcceptanceOptions&, std::mt19937_64& rng) {
    const Spectrum truth{0.7, 0.2, 0.1};
    RamseyParams params;
    params.n = 30;
    params.beta = kPi / 2;
    params.U = 1.0;
    params.taus = two_collapse_periods(params.n, params.U, params.beta, truth, 40);
    FitOptions fit;
    fit.seed = rng();
    const auto noisy = fit_spectrum(simulate_measurements(params, truth, 100, rng()), params, 3, fit);
    const auto clean = fit_spectrum(noiseless_measurements(params, truth, 100), params, 3, fit);
    double noisy_err = 0.0, clean_err = 0.0;
    for (int r = 0; r < 3; ++r) {
        noisy_err = std::max(noisy_err, std::abs(noisy.p_hat[r] - truth[r]));
        clean_err = std::max(clean_err, std::abs(clean.p_hat[r] - truth[r]));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "noisy p_hat %s (max error %.3g <= 0.05), noiseless max error %.3g <= 1e-6",
                  noisy.p_hat.to_string().c_str(), noisy_err, clean_err);
    return {noisy_err <= 0.05 && clean_err <= 1e-6, clean_err, 1e-6, buf};
}

Outcome truncation(const AcceptanceOptions&, std::mt19937_64&) {
    const Spectrum p{0.7, 0.2, 0.1};
    RamseyParams params;
    params.n = 30;
    params.beta = kPi / 2;
    params.U = 1.0;
    params.taus = two_collapse_periods(params.n, params.U, params.beta, p, 100);
    double exact_time = 1e300, trunc_time = 1e300;
    SignalCurve exact, trunc;
    for (int rep = 0; rep < 3; ++rep) {
        auto start = Clock::now();
        exact = exact_signal(params, p);
        exact_time = std::min(exact_time, seconds_since(start));
        start = Clock::now();
        trunc = truncated_signal(params, p, 5.0);
        trunc_time = std::min(trunc_time, seconds_since(start));
    }
    const double err = max_abs_diff(exact.values, trunc.values);
    const double mass = trunc.truncation->eyd_mass;
    char buf[160];
    std::snprintf(buf, sizeof buf, "eyd mass %.6f >= 0.999, %zu/%zu diagrams, %.3gs truncated < %.3gs exact", mass,
                  trunc.truncation->diagrams_kept, trunc.truncation->diagrams_total, trunc_time, exact_time);
    return {err <= 1e-3 && mass >= 0.999 && trunc_time < exact_time, err, 1e-3, buf};
}

Outcome loss_limits(const AcceptanceOptions&, std::mt19937_64& rng) {
    const Spectrum p{2.0 / 3.0, 1.0 / 3.0};
    RamseyParams params;
    params.n = 4;
    params.beta = kPi / 4;
    params.U = 1.0;
    params.taus = linear_grid(0.0, 0.1, 21);
    const DenseState initial = ramsey_initial_state(params.n, p);
    const auto lossless = full_hilbert_signal(params, p).values;

    std::vector<double> no_loss, lossy;
    for (const auto& pt : lindblad_loss_evolve(initial, params, 0.0)) no_loss.push_back(pt.normalized());
    double n_in_prev = params.n + 1e-9;
    bool n_in_monotone = true;
    for (const auto& pt : lindblad_loss_evolve(initial, params, 0.5 * params.U)) {
        lossy.push_back(pt.normalized());
        n_in_monotone = n_in_monotone && pt.n_in <= n_in_prev + 1e-9;
        n_in_prev = pt.n_in;
    }
    const double gamma0_err = max_abs_diff(no_loss, lossless);
    const double loss_shift = max_abs_diff(lossy, lossless);

    const auto ensemble = random_coupling_ensemble(params, p, 0.0, 3, rng());
    bool uniform_exact = true;
    for (const auto& curve : ensemble.realizations) uniform_exact = uniform_exact && curve == lossless;

    // Mean-field loss trace, sampled densely in time.
    const Spectrum p_mf{0.8, 0.2};
    const SingleAtomState opened = apply_pulse(SingleAtomState::ground(p_mf), kPi / 20);
    double trace_prev = opened.trace();
    bool trace_monotone = true;
    for (int i = 1; i <= 20; ++i) {
        const double tau = 0.05 * i / 20.0;
        const auto state = loss_meanfield_evolution(opened, Couplings{1.0, 0, 0, 0}, 0.0, 0.5, 100, tau);
        trace_monotone = trace_monotone && state.trace() <= trace_prev + 1e-12;
        trace_prev = state.trace();
    }

    const bool ok = gamma0_err <= 1e-9 && uniform_exact && loss_shift > 10 * 1e-9 && trace_monotone && n_in_monotone;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "lossy shift %.3g > 1e-8, dU=0 %s, mean-field trace %s, in-trap number %s", loss_shift,
                  uniform_exact ? "bitwise uniform" : "DIFFERS", trace_monotone ? "non-increasing" : "INCREASES",
                  n_in_monotone ? "non-increasing" : "INCREASES");
    return {ok, gamma0_err, 1e-9, buf};
}

Outcome physical_constants(const AcceptanceOptions&, std::mt19937_64&) {
    const Couplings c = derive_couplings(PhysicalParams{});
    const double target = 2.0 * kPi * 10.0;
    const double rel = std::abs(c.U_gg - target) / target;
    char buf[96];
    std::snprintf(buf, sizeof buf, "U_gg = 2pi x %.4g Hz", c.U_gg / (2.0 * kPi));
    return {rel <= 0.05, rel, 0.05, buf};
}

struct CheckSpec {
    const char* name;
    double runtime_limit_s;
    Outcome (*run)(const AcceptanceOptions&, std::mt19937_64&);
};

const CheckSpec kChecks[kAcceptanceCheckCount] = {
    {"oracle-equivalence", 300, oracle_equivalence},
    {"branching-trace", 120, branching_trace},
    {"permutation-trace", 60, permutation_traces},
    {"meanfield-consistency", 60, meanfield_consistency},
    {"asymptotic-convergence", 300, asymptotic_convergence},
    {"energy-degeneracy", 10, energy_degeneracy},
    {"eyd-normalization", 120, eyd_normalization},
    {"shot-variance", 60, shot_variance},
    {"round-trip-estimation", 180, round_trip},
    {"truncation", 300, truncation},
    {"loss-and-imperfections", 300, loss_limits},
    {"physical-constants", 1, physical_constants},
};

}  // namespace

CheckResult run_check(int id, const AcceptanceOptions& opts) {
    if (id < 1 || id > kAcceptanceCheckCount) throw std::out_of_range("no acceptance check " + std::to_string(id));
    const CheckSpec& check = kChecks[id - 1];
    CheckResult r;
    r.id = id;
    r.name = check.name;
    r.runtime_limit_s = check.runtime_limit_s;
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(id));
    const auto start = Clock::now();
    try {
        const Outcome out = check.run(opts, rng);
        r.passed = out.passed;
        r.max_error = out.max_error;
        r.tolerance = out.tolerance;
        r.detail = out.detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.max_error = std::numeric_limits<double>::infinity();
        r.detail = std::string("exception: ") + e.what();
    }
    r.runtime_s = seconds_since(start);
    if (r.runtime_s > r.runtime_limit_s) {
        r.passed = false;
        r.detail += " (runtime limit exceeded)";
    }
    return r;
}

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opts) {
    std::vector<CheckResult> out;
    for (int id = 1; id <= kAcceptanceCheckCount; ++id) out.push_back(run_check(id, opts));
    return out;
}

std::string format_check(const CheckResult& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s %2d %-24s max_error=%-10.3g tol=%-8.3g runtime=%.2fs  %s",
                  r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.max_error, r.tolerance, r.runtime_s,
                  r.detail.c_str());
    return buf;
}

nlohmann::json to_json(const CheckResult& r) {
    return {{"id", r.id},
            {"check", r.name},
            {"status", r.passed ? "pass" : "fail"},
            {"max_error", std::isfinite(r.max_error) ? nlohmann::json(r.max_error) : nlohmann::json(nullptr)},
            {"tolerance", r.tolerance},
            {"runtime", r.runtime_s},
            {"runtime_limit", r.runtime_limit_s},
            {"detail", r.detail}};
}

}  // namespace alkspec
