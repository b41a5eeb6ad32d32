#include "alkspec/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace alkspec {

MeasurementRecord MeasurementRecord::from_counts(double tau, int n, std::vector<int> counts) {
    MeasurementRecord r;
    r.tau = tau;
    r.n = n;
    r.shots = static_cast<int>(counts.size());
    r.mean_count = counts.empty() ? 0.0 : std::accumulate(counts.begin(), counts.end(), 0.0) / counts.size();
    r.counts = std::move(counts);
    r.validate();
    return r;
}

MeasurementRecord MeasurementRecord::from_mean(double tau, int n, int shots, double mean_count) {
    MeasurementRecord r;
    r.tau = tau;
    r.n = n;
    r.shots = shots;
    r.mean_count = mean_count;
    r.validate();
    return r;
}

void MeasurementRecord::validate() const {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("record dark time must be finite and >= 0");
    if (n < 1) throw std::invalid_argument("record atom number must be >= 1");
    if (shots < 1) throw std::invalid_argument("record needs at least one shot");
    if (!counts.empty() && static_cast<int>(counts.size()) != shots) {
        throw std::invalid_argument("record shot count does not match its counts");
    }
    for (int c : counts) {
        if (c < 0 || c > n) throw std::invalid_argument("record count outside [0, n]");
    }
    if (!(mean_count >= 0.0 && mean_count <= n)) throw std::invalid_argument("record mean count outside [0, n]");
}

std::string to_string(NoiseModel m) { return m == NoiseModel::binomial ? "binomial" : "gaussian"; }
std::string to_string(FitModel m) { return m == FitModel::exact ? "exact" : "asymptotic"; }

NoiseModel parse_noise_model(const std::string& s) {
    if (s == "binomial") return NoiseModel::binomial;
    if (s == "gaussian") return NoiseModel::gaussian;
    throw std::invalid_argument("unknown noise model: " + s);
}

FitModel parse_fit_model(const std::string& s) {
    if (s == "exact") return FitModel::exact;
    if (s == "asymptotic") return FitModel::asymptotic;
    throw std::invalid_argument("unknown fit model: " + s);
}

std::vector<MeasurementRecord> simulate_measurements(const RamseyParams& params, const Spectrum& p, int shots_per_tau,
                                                     std::uint64_t seed, NoiseModel noise) {
    if (shots_per_tau < 1) throw std::invalid_argument("shots_per_tau must be >= 1");
    const SignalCurve curve = exact_signal(params, p);
    std::mt19937_64 rng(seed);
    std::vector<MeasurementRecord> out;
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        const double s = curve.values[i];
        if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("signal outside [0, 1]");
        std::vector<int> counts(static_cast<std::size_t>(shots_per_tau));
        if (noise == NoiseModel::binomial) {
            std::binomial_distribution<int> dist(params.n, s);
            for (int& c : counts) c = dist(rng);
        } else {
            std::normal_distribution<double> dist(params.n * s, std::sqrt(params.n * (s - s * s)));
            for (int& c : counts) c = static_cast<int>(std::clamp(std::round(dist(rng)), 0.0, double(params.n)));
        }
        out.push_back(MeasurementRecord::from_counts(params.taus[i], params.n, std::move(counts)));
    }
    return out;
}

namespace {

std::vector<double> model_signal(FitModel model, const RamseyParams& params, const Spectrum& p,
                                 const std::optional<ExactSignalModel>& exact) {
    if (model == FitModel::asymptotic) return asymptotic_signal(params, p).values;
    if (exact) return exact->evaluate(params, p);
    return exact_signal(params, p).values;
}

}  // namespace

std::vector<MeasurementRecord> noiseless_measurements(const RamseyParams& params, const Spectrum& p, int shots_per_tau,
                                                      FitModel model) {
    params.validate();
    const std::vector<double> s = model_signal(model, params, p, std::nullopt);
    std::vector<MeasurementRecord> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.push_back(MeasurementRecord::from_mean(params.taus[i], params.n, shots_per_tau, params.n * s[i]));
    }
    return out;
}

std::vector<double> stick_breaking(const Eigen::VectorXd& z) {
    std::vector<double> p;
    double remaining = 1.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double frac = 1.0 / (1.0 + std::exp(-z(i)));
        p.push_back(remaining * frac);
        remaining *= 1.0 - frac;
    }
    p.push_back(remaining);
    return p;
}

Eigen::VectorXd stick_breaking_inverse(const std::vector<double>& p) {
    if (p.empty()) throw std::invalid_argument("empty spectrum");
    Eigen::VectorXd z(static_cast<Eigen::Index>(p.size()) - 1);
    double remaining = 1.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double frac = std::clamp(p[static_cast<std::size_t>(i)] / remaining, 1e-12, 1.0 - 1e-12);
        z(i) = std::log(frac / (1.0 - frac));
        remaining -= p[static_cast<std::size_t>(i)];
        remaining = std::max(remaining, 1e-300);
    }
    return z;
}

namespace {

struct FitProblem {
    FitModel model;
    RamseyParams params;
    std::vector<double> observed;
    std::vector<double> shots;
    std::optional<ExactSignalModel> exact;
    double variance_floor;

    std::vector<double> signal(const Eigen::VectorXd& z) const {
        return model_signal(model, params, Spectrum::normalized(stick_breaking(z)), exact);
    }
    std::vector<double> weights_from(const std::vector<double>& s) const {
        std::vector<double> w(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            w[i] = shots[i] / std::max((s[i] - s[i] * s[i]) / params.n, variance_floor);
        }
        return w;
    }
};

// Weighted residual vector in the layout expected by the MINPACK-style solver.
struct ResidualFunctor {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const FitProblem* problem;
    std::vector<double> weights;
    int input_count;

    int inputs() const { return input_count; }
    int values() const { return static_cast<int>(problem->observed.size()); }
    int operator()(const Eigen::VectorXd& z, Eigen::VectorXd& fvec) const {
        const std::vector<double> s = problem->signal(z);
        for (std::size_t i = 0; i < s.size(); ++i) {
            fvec(static_cast<Eigen::Index>(i)) = std::sqrt(weights[i]) * (problem->observed[i] - s[i]);
        }
        return 0;
    }
};

struct LocalFit {
    Eigen::VectorXd z;
    double objective;
    bool converged;
};

LocalFit local_fit(const FitProblem& problem, const std::vector<double>& weights, Eigen::VectorXd z, int max_evaluations) {
    ResidualFunctor functor{&problem, weights, static_cast<int>(z.size())};
    Eigen::NumericalDiff<ResidualFunctor, Eigen::Central> diff(functor);
    Eigen::LevenbergMarquardt<decltype(diff)> lm(diff);
    lm.parameters.ftol = 1e-15;
    lm.parameters.xtol = 1e-15;
    lm.parameters.maxfev = max_evaluations;
    const auto status = lm.minimize(z);
    Eigen::VectorXd f(functor.values());
    functor(z, f);
    using namespace Eigen::LevenbergMarquardtSpace;
    const bool ok = status != ImproperInputParameters && status != TooManyFunctionEvaluation && status != UserAsked;
    return {z, f.squaredNorm(), ok};
}

std::vector<double> dirichlet_uniform(int d, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> v(static_cast<std::size_t>(d));
    for (double& x : v) x = expo(rng);
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (double& x : v) x /= total;
    return v;
}

}  // namespace

EstimationResult fit_spectrum(const std::vector<MeasurementRecord>& records, const RamseyParams& base, int d,
                              const FitOptions& opts) {
    if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
    if (opts.starts < 1) throw std::invalid_argument("need at least one start");

    // Pool records sharing a dark time.
    std::map<double, std::pair<double, double>> pooled;  // tau -> (shots, shots * fraction)
    for (const auto& r : records) {
        r.validate();
        if (r.n != base.n) throw std::invalid_argument("record atom number does not match the parameters");
        auto& [shots, sum] = pooled[r.tau];
        shots += r.shots;
        sum += r.shots * r.fraction();
    }
    if (static_cast<int>(pooled.size()) < d) {
        throw std::invalid_argument("need at least d distinct dark times to fit a d-dimensional spectrum");
    }

    FitProblem problem{opts.model, base, {}, {}, std::nullopt, opts.variance_floor};
    problem.params.taus.clear();
    for (const auto& [tau, acc] : pooled) {
        problem.params.taus.push_back(tau);
        problem.shots.push_back(acc.first);
        problem.observed.push_back(acc.second / acc.first);
    }
    problem.params.validate();
    if (opts.model == FitModel::exact) problem.exact.emplace(base.n, d);

    EstimationResult result;
    result.model = opts.model;
    result.starts = opts.starts;
    result.seed = opts.seed;
    result.taus = problem.params.taus;
    result.observed = problem.observed;

    if (d == 1) {
        result.p_hat = Spectrum::uniform(1);
        result.fitted = model_signal(opts.model, problem.params, result.p_hat, problem.exact);
        const auto w = problem.weights_from(result.fitted);
        for (std::size_t i = 0; i < w.size(); ++i) result.residual_norm += w[i] * std::pow(result.observed[i] - result.fitted[i], 2);
        result.covariance = Eigen::MatrixXd::Zero(1, 1);
        result.converged = true;
        return result;
    }

    // Multi-start with weights from the observed fractions.
    const auto data_weights = problem.weights_from(problem.observed);
    std::mt19937_64 rng(opts.seed);
    std::optional<LocalFit> best;
    for (int s = 0; s < opts.starts; ++s) {
        std::vector<double> start;
        if (s == 0) start = opts.init ? opts.init->vector() : std::vector<double>(static_cast<std::size_t>(d), 1.0 / d);
        else start = dirichlet_uniform(d, rng);
        if (static_cast<int>(start.size()) != d) throw std::invalid_argument("initial spectrum has the wrong dimension");
        LocalFit fit = local_fit(problem, data_weights, stick_breaking_inverse(start), opts.max_evaluations);
        if (!best || fit.objective < best->objective) best = fit;
    }

    // Reweight with the model-implied variance at the current estimate.
    LocalFit current = *best;
    std::vector<double> weights = data_weights;
    for (int round = 0; round < opts.reweight_rounds; ++round) {
        weights = problem.weights_from(problem.signal(current.z));
        const LocalFit next = local_fit(problem, weights, current.z, opts.max_evaluations);
        const auto p_old = stick_breaking(current.z), p_new = stick_breaking(next.z);
        double change = 0.0;
        for (int i = 0; i < d; ++i) change = std::max(change, std::abs(p_old[static_cast<std::size_t>(i)] - p_new[static_cast<std::size_t>(i)]));
        current = next;
        if (change < 1e-12) break;
    }

    const std::vector<double> raw = stick_breaking(current.z);
    result.p_hat = Spectrum::normalized(raw);
    result.fitted = problem.signal(current.z);
    result.residual_norm = current.objective;
    result.converged = current.converged;

    // Gauss-Newton covariance in z, pushed through the stick-breaking Jacobian.
    ResidualFunctor functor{&problem, weights, d - 1};
    Eigen::NumericalDiff<ResidualFunctor, Eigen::Central> diff(functor);
    Eigen::MatrixXd jac(functor.values(), d - 1);
    diff.df(current.z, jac);
    const Eigen::MatrixXd info = jac.transpose() * jac;
    const Eigen::MatrixXd cov_z = info.completeOrthogonalDecomposition().pseudoInverse();
    Eigen::MatrixXd g(d, d - 1);
    for (int j = 0; j < d - 1; ++j) {
        const double h = 1e-6;
        Eigen::VectorXd zp = current.z, zm = current.z;
        zp(j) += h;
        zm(j) -= h;
        const auto pp = stick_breaking(zp), pm = stick_breaking(zm);
        for (int i = 0; i < d; ++i) g(i, j) = (pp[static_cast<std::size_t>(i)] - pm[static_cast<std::size_t>(i)]) / (2 * h);
    }
    const Eigen::MatrixXd cov_raw = g * cov_z * g.transpose();
    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return raw[static_cast<std::size_t>(a)] > raw[static_cast<std::size_t>(b)]; });
    result.covariance.resize(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) result.covariance(i, j) = cov_raw(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    return result;
}

Spectrum estimate_from_eyd_sample(const YoungDiagram& lambda, int n, int d) {
    if (lambda.boxes() != n) throw std::invalid_argument("diagram is not a partition of n");
    if (lambda.num_rows() > d) throw std::invalid_argument("diagram has more than d rows");
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = static_cast<double>(lambda.row(i + 1)) / n;
    return Spectrum(std::move(p));
}

}  // namespace alkspec
