#include "alkspec/ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "alkspec/numeric.hpp"

namespace alkspec {

namespace {

constexpr std::size_t kPruned = std::numeric_limits<std::size_t>::max();

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

std::vector<double> w_weights(int n, double beta) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) out[w] = binom_weight(w, n, beta);
    return out;
}

// sin^2(beta)/2 [1 - sum_w Pr(w) Re{e^{i delta tau} Tr(rho B_w)}] for every tau.
std::vector<double> signal_from_kernel(const RamseyParams& params, const PhaseKernel& kernel,
                                       std::span<const double> weights_by_w) {
    const double prefactor = 0.5 * std::sin(params.beta) * std::sin(params.beta);
    std::vector<double> values;
    values.reserve(params.taus.size());
    for (double tau : params.taus) {
        const double alpha = params.U * tau;
        const double delta_tau = params.delta * tau;
        double acc = 0.0;
        for (int w = 0; w < params.n; ++w) {
            const double pw = weights_by_w[static_cast<std::size_t>(w)];
            if (pw == 0.0) continue;
            acc += pw * kernel.real_part(w, alpha, delta_tau);
        }
        values.push_back(clamp_unit(prefactor * (1.0 - acc)));
    }
    return values;
}

}  // namespace

int branching_phase_sign() {
#ifdef ALKSPEC_MUTATE_BRANCHING_PHASE
    return +1;
#else
    return -1;
#endif
}

void RamseyParams::validate() const {
    if (n < 1) throw std::invalid_argument("Ramsey parameters require n >= 1");
    if (!(std::abs(beta) <= 2.0 * std::numbers::pi + 1e-12)) {
        throw std::invalid_argument("pulse area beta must lie in [-2pi, 2pi]");
    }
    if (!std::isfinite(delta) || !std::isfinite(U)) throw std::invalid_argument("delta and U must be finite");
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(taus[i] >= 0.0) || !std::isfinite(taus[i])) throw std::invalid_argument("dark times must be finite and >= 0");
        if (i > 0 && !(taus[i] > taus[i - 1])) throw std::invalid_argument("dark times must be strictly increasing");
    }
}

std::string to_string(SignalMethod m) {
    switch (m) {
        case SignalMethod::exact: return "exact";
        case SignalMethod::truncated: return "truncated";
        case SignalMethod::asymptotic: return "asymptotic";
        case SignalMethod::meanfield_ode: return "meanfield";
        case SignalMethod::oracle: return "oracle";
    }
    return "unknown";
}

SignalMethod parse_signal_method(const std::string& s) {
    if (s == "exact") return SignalMethod::exact;
    if (s == "truncated") return SignalMethod::truncated;
    if (s == "asymptotic") return SignalMethod::asymptotic;
    if (s == "meanfield" || s == "meanfield-ode") return SignalMethod::meanfield_ode;
    if (s == "oracle") return SignalMethod::oracle;
    throw std::invalid_argument("unknown signal method '" + s + "'");
}

double binom_weight(int w, int n, double beta) {
    if (n < 1 || w < 0 || w > n - 1) throw std::invalid_argument("binom_weight requires 0 <= w <= n-1");
    const double c2 = std::cos(beta / 2) * std::cos(beta / 2);
    const double s2 = std::sin(beta / 2) * std::sin(beta / 2);
    const int g = n - w - 1;
    if ((g > 0 && c2 == 0.0) || (w > 0 && s2 == 0.0)) return 0.0;
    double log_w = std::lgamma(n) - std::lgamma(w + 1.0) - std::lgamma(g + 1.0);
    if (g > 0) log_w += g * std::log(c2);
    if (w > 0) log_w += w * std::log(s2);
    return std::exp(log_w);
}

std::complex<double> trace_lambda_Bw(const YoungDiagram& lambda, int w, double alpha, int n) {
    if (lambda.boxes() != n) throw std::invalid_argument(lambda.to_string() + " is not a partition of n");
    if (w < 0 || w > n - 1) throw std::invalid_argument("trace_lambda_Bw requires 0 <= w <= n-1");
    const int l = n - w;
    const int sign = branching_phase_sign();
    const double log_dim_lambda = dimension_sn(lambda).log();

    BranchingTable branching;
    std::complex<double> acc = 0.0;
    for (const auto& xi : enumerate_diagrams(l, lambda.num_rows())) {
        const BigCount m = branching.multiplicity(lambda, xi);
        if (m.is_zero()) continue;
        const double pr = std::exp(m.log() + dimension_sn(xi).log() - log_dim_lambda);
        std::complex<double> inner = 0.0;
        for (int r = 1; r <= xi.num_rows(); ++r) {
            const double ratio = removal_ratio(xi, r);
            if (ratio == 0.0) continue;
            inner += ratio * std::polar(1.0, wrap_phase(sign * alpha * (xi.row(r) - r)));
        }
        acc += pr * inner;
    }
    return std::polar(1.0, wrap_phase(alpha * (l - 1))) * acc;
}

std::complex<double> trace_Bw(int n, const Spectrum& p, int w, double alpha) {
    const EydModel eyd(n, p.dim());
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < eyd.diagrams().size(); ++i) {
        const double pr = eyd.probability(i, p);
        if (pr == 0.0) continue;
        acc += pr * trace_lambda_Bw(eyd.diagrams()[i], w, alpha, n);
    }
    return acc;
}

BranchingLattice::BranchingLattice(int n, int d, int min_level, const KeepFn& keep)
    : n_(n), d_(d), min_level_(min_level) {
    if (n < 1 || d < 1) throw std::invalid_argument("BranchingLattice requires n >= 1 and d >= 1");
    if (min_level < 1 || min_level > n) throw std::invalid_argument("BranchingLattice min_level out of range");

    for (auto& lambda : enumerate_diagrams(n, d)) {
        if (!keep || keep(n, lambda)) top_.push_back(std::move(lambda));
    }
    levels_.resize(static_cast<std::size_t>(n - min_level + 1));
    for (const auto& lambda : top_) levels_[0].push_back({lambda, {}});

    for (int level = n; level >= min_level; --level) {
        auto& nodes = levels_[static_cast<std::size_t>(n - level)];
        const bool has_next = level - 1 >= min_level;
        std::map<std::vector<int>, std::size_t> next_index;
        std::vector<Node> next;
        for (auto& node : nodes) {
            for (int r = 1; r <= node.diagram.num_rows(); ++r) {
                const double ratio = removal_ratio(node.diagram, r);
                if (ratio == 0.0) continue;
                Edge edge{kPruned, ratio, node.diagram.row(r) - r};
                if (has_next) {
                    YoungDiagram child = *remove_box(node.diagram, r);
                    auto it = next_index.find(child.rows());
                    if (it != next_index.end()) {
                        edge.child = it->second;
                    } else if (!keep || keep(level - 1, child)) {
                        edge.child = next.size();
                        next_index.emplace(child.rows(), next.size());
                        next.push_back({std::move(child), {}});
                    }
                }
                node.edges.push_back(edge);
            }
        }
        if (has_next) levels_[static_cast<std::size_t>(n - level + 1)] = std::move(next);
    }
}

std::size_t BranchingLattice::node_count() const {
    std::size_t total = 0;
    for (const auto& level : levels_) total += level.size();
    return total;
}

PhaseKernel BranchingLattice::propagate(std::span<const double> top_weights, bool renormalize) const {
    if (top_weights.size() != top_.size()) throw std::invalid_argument("one weight per top-level diagram required");
    PhaseKernel kernel(n_, d_, min_level_);
    std::vector<double> current(top_weights.begin(), top_weights.end());
    for (int level = n_; level >= min_level_; --level) {
        const auto& nodes = levels_[static_cast<std::size_t>(n_ - level)];
        if (renormalize) {
            double total = 0.0;
            for (double q : current) total += q;
            if (total > 0.0)
                for (double& q : current) q /= total;
        }
        auto& weights = kernel.weights_[static_cast<std::size_t>(level)];
        weights.assign(static_cast<std::size_t>(level + d_ + 1), 0.0);
        std::vector<double> next;
        if (level - 1 >= min_level_) next.assign(levels_[static_cast<std::size_t>(n_ - level + 1)].size(), 0.0);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double q = current[i];
            if (q == 0.0) continue;
            for (const auto& edge : nodes[i].edges) {
                weights[static_cast<std::size_t>(edge.content + d_)] += q * edge.ratio;
                if (edge.child != kPruned) next[edge.child] += q * edge.ratio;
            }
        }
        current = std::move(next);
    }
    return kernel;
}

bool PhaseKernel::has_level(int w) const {
    const int l = n_ - w;
    return w >= 0 && l >= min_level_ && l <= n_;
}

std::complex<double> PhaseKernel::trace(int w, double alpha) const {
    if (!has_level(w)) throw std::out_of_range("PhaseKernel has no level for this w");
    const int l = n_ - w;
    const int sign = branching_phase_sign();
    const auto& weights = weights_[static_cast<std::size_t>(l)];
    std::complex<double> acc = 0.0;
    for (std::size_t idx = 0; idx < weights.size(); ++idx) {
        if (weights[idx] == 0.0) continue;
        const int content = static_cast<int>(idx) - d_;
        acc += weights[idx] * std::polar(1.0, wrap_phase(alpha * (l - 1 + sign * content)));
    }
    return acc;
}

double PhaseKernel::real_part(int w, double alpha, double delta_tau) const {
    if (!has_level(w)) throw std::out_of_range("PhaseKernel has no level for this w");
    const int l = n_ - w;
    const int sign = branching_phase_sign();
    const double detuning_phase = wrap_phase(delta_tau);
    const auto& weights = weights_[static_cast<std::size_t>(l)];
    double acc = 0.0;
    for (std::size_t idx = 0; idx < weights.size(); ++idx) {
        if (weights[idx] == 0.0) continue;
        const int content = static_cast<int>(idx) - d_;
        acc += weights[idx] * std::cos(detuning_phase + wrap_phase(alpha * (l - 1 + sign * content)));
    }
    return acc;
}

ExactSignalModel::ExactSignalModel(int n, int d) : n_(n), d_(d), eyd_(n, d), lattice_(n, d) {}

PhaseKernel ExactSignalModel::kernel(const Spectrum& p) const {
    if (p.dim() != d_) throw std::invalid_argument("spectrum dimension does not match the signal model");
    std::vector<double> top(eyd_.diagrams().size());
    for (std::size_t i = 0; i < top.size(); ++i) top[i] = eyd_.probability(i, p);
    return lattice_.propagate(top, false);
}

std::vector<double> ExactSignalModel::evaluate(const RamseyParams& params, const Spectrum& p) const {
    if (params.n != n_) throw std::invalid_argument("atom number does not match the signal model");
    return signal_from_kernel(params, kernel(p), w_weights(n_, params.beta));
}

SignalCurve exact_signal(const RamseyParams& params, const Spectrum& p) {
    params.validate();
    const ExactSignalModel model(params.n, p.dim());
    return {params, model.evaluate(params, p), SignalMethod::exact, std::nullopt};
}

SignalCurve truncated_signal(const RamseyParams& params, const Spectrum& p, double k_sigma) {
    params.validate();
    if (!(k_sigma > 0.0)) throw std::invalid_argument("k_sigma must be positive");
    const int n = params.n;
    const int d = p.dim();

    if (std::isinf(k_sigma)) {
        SignalCurve curve = exact_signal(params, p);
        curve.method = SignalMethod::truncated;
        const auto total = enumerate_diagrams(n, d).size();
        curve.truncation = TruncationReport{k_sigma, 1.0, 1.0, total, total};
        return curve;
    }

    // Per-row window around l p: k_sigma sqrt(l p_i (1 - p_i)) plus one box of slack.
    const auto in_window = [&](int level, const YoungDiagram& xi) {
        for (int i = 0; i < d; ++i) {
            const double radius = k_sigma * std::sqrt(level * p[i] * (1.0 - p[i])) + 1.0;
            if (std::abs(xi.row(i + 1) - level * p[i]) > radius) return false;
        }
        return true;
    };

    const double s2 = std::sin(params.beta / 2) * std::sin(params.beta / 2);
    const double c2 = 1.0 - s2;
    const double w_mean = (n - 1) * s2;
    const double w_radius = k_sigma * std::sqrt(n * s2 * c2) + 1.0;
    const int w_lo = std::max(0, static_cast<int>(std::ceil(w_mean - w_radius)));
    const int w_hi = std::min(n - 1, static_cast<int>(std::floor(w_mean + w_radius)));

    std::vector<double> weights(static_cast<std::size_t>(n), 0.0);
    double w_mass = 0.0;
    for (int w = w_lo; w <= w_hi; ++w) w_mass += weights[w] = binom_weight(w, n, params.beta);
    for (double& x : weights) x /= w_mass;

    const BranchingLattice lattice(n, d, n - w_hi, in_window);
    // Retained Pr(lambda) from Schur polynomials in floating point.
    std::vector<double> top = eyd_log_probabilities_schur(lattice.top(), p);
    double eyd_mass = 0.0;
    for (double& x : top) eyd_mass += x = std::exp(x);
    if (!(eyd_mass > 0.0)) throw std::invalid_argument("truncation window retains no probability mass");

    const PhaseKernel kernel = lattice.propagate(top, true);
    TruncationReport report{k_sigma, eyd_mass, w_mass, lattice.top().size(), enumerate_diagrams(n, d).size()};
    return {params, signal_from_kernel(params, kernel, weights), SignalMethod::truncated, report};
}

SignalCurve asymptotic_signal(const RamseyParams& params, const Spectrum& p) {
    params.validate();
    const double prefactor = 0.5 * std::sin(params.beta) * std::sin(params.beta);
    const double c2 = std::cos(params.beta / 2) * std::cos(params.beta / 2);
    SignalCurve curve{params, {}, SignalMethod::asymptotic, std::nullopt};
    curve.values.reserve(params.taus.size());
    for (double tau : params.taus) {
        double acc = 0.0;
        for (int r = 0; r < p.dim(); ++r) {
            const double interaction = wrap_phase(params.U * tau * (params.n - 1) * (1.0 - p[r]) * c2);
            acc += p[r] * std::cos(interaction + wrap_phase(params.delta * tau));
        }
        curve.values.push_back(clamp_unit(prefactor * (1.0 - acc)));
    }
    return curve;
}

double meanfield_variance(double signal_value, int n) {
    if (!(signal_value >= 0.0 && signal_value <= 1.0)) throw std::invalid_argument("signal value must lie in [0,1]");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return (signal_value - signal_value * signal_value) / n;
}

}  // namespace alkspec
