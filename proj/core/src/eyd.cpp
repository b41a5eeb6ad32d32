#include "alkspec/eyd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "alkspec/numeric.hpp"

namespace alkspec {

double EydDistribution::total() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.prob;
    return s;
}

const EydEntry& EydDistribution::mode() const {
    if (entries.empty()) throw std::logic_error("empty EYD distribution");
    return *std::max_element(entries.begin(), entries.end(),
                             [](const EydEntry& a, const EydEntry& b) { return a.prob < b.prob; });
}

EydModel::EydModel(int n, int d) : EydModel(n, d, enumerate_diagrams(std::max(n, 0), std::max(d, 1))) {}

EydModel::EydModel(int n, int d, std::vector<YoungDiagram> subset) : n_(n), d_(d), diagrams_(std::move(subset)) {
    if (n < 0 || d < 1) throw std::invalid_argument("EydModel requires n >= 0 and d >= 1");
    for (std::size_t i = 0; i < diagrams_.size(); ++i) {
        if (diagrams_[i].boxes() != n || diagrams_[i].num_rows() > d) {
            throw std::invalid_argument("EydModel subset contains " + diagrams_[i].to_string());
        }
        if (i > 0 && !(diagrams_[i] < diagrams_[i - 1])) {
            throw std::invalid_argument("EydModel subset must follow enumeration order");
        }
    }
    const auto contents = enumerate_diagrams(n, d);
    KostkaTable kostka_table;
    table_.reserve(diagrams_.size());
    for (const auto& lambda : diagrams_) {
        DiagramTerms entry{dimension_sn(lambda, d).log(), {}};
        for (const auto& content : contents) {
            // K_{lambda,mu} vanishes unless lambda dominates mu; the recursion
            // finds that out quickly, so no separate dominance test.
            const auto mu = content.padded(d);
            const BigCount k = kostka_table(lambda, mu);
            if (k.is_zero()) continue;
            ContentTerm term{k.log(), {}};
            std::vector<int> ordering(mu.rbegin(), mu.rend());
            do {
                term.orderings.push_back(ordering);
            } while (std::next_permutation(ordering.begin(), ordering.end()));
            entry.terms.push_back(std::move(term));
        }
        table_.push_back(std::move(entry));
    }
}

std::size_t EydModel::index_of(const YoungDiagram& lambda) const {
    if (lambda.boxes() != n_ || lambda.num_rows() > d_) {
        throw std::invalid_argument(lambda.to_string() + " is not a partition of " + std::to_string(n_) +
                                    " with at most " + std::to_string(d_) + " rows");
    }
    // diagrams_ is in strictly decreasing lexicographic order.
    auto it = std::lower_bound(diagrams_.begin(), diagrams_.end(), lambda,
                               [](const YoungDiagram& a, const YoungDiagram& b) { return a > b; });
    if (it == diagrams_.end() || *it != lambda) throw std::invalid_argument(lambda.to_string() + " is not part of this model");
    return static_cast<std::size_t>(it - diagrams_.begin());
}

double EydModel::log_probability(std::size_t index, const Spectrum& p) const {
    if (p.dim() != d_) throw std::invalid_argument("spectrum dimension does not match EydModel");
    std::vector<double> log_p(static_cast<std::size_t>(d_));
    for (int r = 0; r < d_; ++r) log_p[r] = std::log(p[r]);

    const auto& entry = table_.at(index);
    LogSumExp acc;
    for (const auto& term : entry.terms) {
        for (const auto& m : term.orderings) {
            double s = term.log_kostka;
            for (int r = 0; r < d_; ++r) {
                if (m[r] != 0) s += m[r] * log_p[r];  // 0^0 = 1
            }
            acc.add(s);
        }
    }
    return entry.log_dimension + acc.value();
}

double EydModel::probability(std::size_t index, const Spectrum& p) const {
    return std::exp(log_probability(index, p));
}

EydDistribution EydModel::distribution(const Spectrum& p) const {
    EydDistribution dist{n_, d_, {}};
    dist.entries.reserve(diagrams_.size());
    for (std::size_t i = 0; i < diagrams_.size(); ++i) dist.entries.push_back({diagrams_[i], probability(i, p)});
    return dist;
}

namespace {

// log s_mu(x_1..x_k) by peeling the last variable: s_mu = sum over nu
// interlacing mu of s_nu(x_1..x_{k-1}) x_k^{|mu|-|nu|}.
class LogSchur {
public:
    explicit LogSchur(const Spectrum& p) : log_x_(static_cast<std::size_t>(p.dim())), memo_(log_x_.size() + 1) {
        for (int r = 0; r < p.dim(); ++r) log_x_[static_cast<std::size_t>(r)] = std::log(p[r]);
    }

    double operator()(const std::vector<int>& mu) { return eval(mu); }

private:
    double power(int r, int exponent) const {
        return exponent == 0 ? 0.0 : exponent * log_x_[static_cast<std::size_t>(r)];
    }

    double eval(const std::vector<int>& mu) {
        const std::size_t k = mu.size();
        if (k == 1) return power(0, mu[0]);
        auto& memo = memo_[k];
        if (auto it = memo.find(mu); it != memo.end()) return it->second;
        const int total = std::accumulate(mu.begin(), mu.end(), 0);
        LogSumExp acc;
        std::vector<int> nu(k - 1);
        const auto fill = [&](auto&& self, std::size_t i, int partial) -> void {
            if (i == k - 1) {
                acc.add(eval(nu) + power(static_cast<int>(k) - 1, total - partial));
                return;
            }
            for (int v = mu[i + 1]; v <= mu[i]; ++v) {
                nu[i] = v;
                self(self, i + 1, partial + v);
            }
        };
        fill(fill, 0, 0);
        return memo[mu] = acc.value();
    }

    std::vector<double> log_x_;
    std::vector<std::map<std::vector<int>, double>> memo_;
};

double log_dimension_sn(const YoungDiagram& lambda, int d) {
    const auto rows = lambda.padded(d);
    std::vector<double> l(static_cast<std::size_t>(d));
    double out = std::lgamma(lambda.boxes() + 1.0);
    for (int i = 0; i < d; ++i) {
        l[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)] + d - 1 - i;
        out -= std::lgamma(l[static_cast<std::size_t>(i)] + 1.0);
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) out += std::log(l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)]);
    return out;
}

}  // namespace

std::vector<double> eyd_log_probabilities_schur(std::span<const YoungDiagram> diagrams, const Spectrum& p) {
    const int d = p.dim();
    LogSchur schur(p);
    std::vector<double> out;
    out.reserve(diagrams.size());
    for (const auto& lambda : diagrams) {
        if (lambda.num_rows() > d) throw std::invalid_argument(lambda.to_string() + " has more than d rows");
        if (lambda.boxes() != diagrams.front().boxes()) throw std::invalid_argument("diagrams must share n");
        out.push_back(log_dimension_sn(lambda, d) + schur(lambda.padded(d)));
    }
    return out;
}

double eyd_probability(const YoungDiagram& lambda, int n, const Spectrum& p) {
    if (lambda.boxes() != n) throw std::invalid_argument(lambda.to_string() + " is not a partition of n");
    EydModel model(n, p.dim());
    return model.probability(model.index_of(lambda), p);
}

EydDistribution eyd_distribution(int n, const Spectrum& p) {
    if (n < 1) throw std::invalid_argument("eyd_distribution requires n >= 1");
    return EydModel(n, p.dim()).distribution(p);
}

double eyd_qubit(double S, int n, double p) {
    const double two_s_real = 2.0 * S;
    const long two_s = std::lround(two_s_real);
    if (n < 0 || std::abs(two_s_real - two_s) > 1e-9 || two_s < 0 || two_s > n || (n - two_s) % 2 != 0) {
        throw std::invalid_argument("invalid total spin label for n copies");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("qubit probability must lie in [0,1]");
    const int upper = static_cast<int>((n + two_s) / 2);  // n/2 + S
    const int lower = n - upper;                          // n/2 - S
    const BigCount::Integer dim = binomial(n, upper).value() - binomial(n, upper + 1).value();
    const double log_dim = BigCount(dim).log();

    const double lp = std::log(p), lq = std::log1p(-p);
    LogSumExp acc;
    for (int m = lower; m <= upper; ++m) {
        double s = 0.0;
        if (m != 0) s += m * lp;
        if (n - m != 0) s += (n - m) * lq;
        acc.add(s);
    }
    return std::exp(log_dim + acc.value());
}

std::vector<YoungDiagram> sample_eyd(const EydDistribution& dist, std::size_t count, std::uint64_t seed) {
    if (dist.entries.empty()) throw std::invalid_argument("cannot sample from an empty distribution");
    std::vector<double> cdf;
    cdf.reserve(dist.entries.size());
    double acc = 0.0;
    for (const auto& e : dist.entries) cdf.push_back(acc += e.prob);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, acc);
    std::vector<YoungDiagram> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = uniform(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        out.push_back(dist.entries[static_cast<std::size_t>(it - cdf.begin())].lambda);
    }
    return out;
}

double trap_energy(const YoungDiagram& lambda, int n) {
    if (lambda.boxes() != n) throw std::invalid_argument(lambda.to_string() + " is not a partition of n");
    double e = 0.5 * n * (n - 1);
    for (int i = 1; i <= lambda.num_rows(); ++i) {
        const double li = lambda.row(i);
        e -= 0.5 * li * (li - 2 * i + 1);
    }
    return e;
}

}  // namespace alkspec
