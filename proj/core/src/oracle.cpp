#include "alkspec/oracle.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "alkspec/errors.hpp"
#include "alkspec/numeric.hpp"

namespace alkspec {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

long long int_pow(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::vector<int> digits_of(long long x, int base, int count) {
    std::vector<int> out(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        out[static_cast<std::size_t>(j)] = static_cast<int>(x % base);
        x /= base;
    }
    return out;
}

long long index_of_digits(const std::vector<int>& digits, int base) {
    long long x = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) x = x * base + *it;
    return x;
}

}  // namespace

double DenseState::hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

double DenseState::min_eigenvalue() const {
    const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

Eigen::MatrixXcd random_unitary(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = cd(normal(rng), normal(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

Eigen::MatrixXcd density_matrix(const Spectrum& p, const Eigen::MatrixXcd& basis) {
    if (basis.rows() != p.dim() || basis.cols() != p.dim()) throw std::invalid_argument("basis has wrong shape");
    Eigen::VectorXcd diag(p.dim());
    for (int r = 0; r < p.dim(); ++r) diag(r) = p[r];
    return basis * diag.asDiagonal() * basis.adjoint();
}

namespace {

void check_swap_sum_args(int n, int w) {
    if (n < 1 || w < 0 || w > n - 1) throw std::invalid_argument("swap_sum_trace_Bw requires 0 <= w <= n - 1");
}

// Dense M = sum_{j<l-1}(1 - s_{j,l-1}) on strings of length l, restricted to
// the given list of strings (closed under the swaps).
Eigen::MatrixXd swap_sum_matrix(const std::vector<long long>& strings, int d, int l) {
    const auto size = static_cast<Eigen::Index>(strings.size());
    std::map<long long, Eigen::Index> position;
    for (Eigen::Index a = 0; a < size; ++a) position[strings[static_cast<std::size_t>(a)]] = a;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index a = 0; a < size; ++a) {
        std::vector<int> x = digits_of(strings[static_cast<std::size_t>(a)], d, l);
        m(a, a) += l - 1;
        for (int j = 0; j + 1 < l; ++j) {
            std::swap(x[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(l - 1)]);
            m(a, position.at(index_of_digits(x, d))) -= 1.0;
            std::swap(x[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(l - 1)]);
        }
    }
    return m;
}

}  // namespace

std::complex<double> swap_sum_trace_Bw(int n, int w, const Spectrum& p, double alpha) {
    check_swap_sum_args(n, w);
    const int d = p.dim();
    const int l = n - w;
    const long long total = int_pow(d, l);
    if (total > 10000) throw SizeLimitError("swap_sum_trace_Bw: d^(n-w) exceeds 10^4");

    std::map<std::vector<int>, std::vector<long long>> sectors;
    for (long long x = 0; x < total; ++x) {
        std::vector<int> counts(static_cast<std::size_t>(d), 0);
        for (int digit : digits_of(x, d, l)) ++counts[static_cast<std::size_t>(digit)];
        sectors[counts].push_back(x);
    }
    cd result = 0.0;
    for (const auto& [counts, strings] : sectors) {
        double weight = 1.0;
        for (int r = 0; r < d; ++r) weight *= std::pow(p[r], counts[static_cast<std::size_t>(r)]);
        if (weight == 0.0) continue;
        const Eigen::MatrixXd m = swap_sum_matrix(strings, d, l);
        const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
        cd sector_trace = 0.0;
        for (double lam : eig) sector_trace += std::polar(1.0, alpha * lam);
        result += weight * sector_trace;
    }
    return result;
}

std::complex<double> swap_sum_trace_Bw(int n, int w, const Eigen::MatrixXcd& rho, double alpha) {
    check_swap_sum_args(n, w);
    const int d = static_cast<int>(rho.rows());
    if (rho.cols() != d) throw std::invalid_argument("rho must be square");
    const int l = n - w;
    const long long total = int_pow(d, l);
    if (total > 1024) throw SizeLimitError("dense swap_sum_trace_Bw: d^(n-w) exceeds 1024");

    std::vector<long long> strings(static_cast<std::size_t>(total));
    for (long long x = 0; x < total; ++x) strings[static_cast<std::size_t>(x)] = x;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(swap_sum_matrix(strings, d, l));
    Eigen::VectorXcd phases(total);
    for (Eigen::Index k = 0; k < total; ++k) phases(k) = std::polar(1.0, alpha * solver.eigenvalues()(k));
    const Eigen::MatrixXcd q = solver.eigenvectors().cast<cd>();
    const Eigen::MatrixXcd unitary = q * phases.asDiagonal() * q.adjoint();

    cd result = 0.0;
    for (long long x = 0; x < total; ++x) {
        const auto dx = digits_of(x, d, l);
        for (long long y = 0; y < total; ++y) {
            const auto dy = digits_of(y, d, l);
            cd entry = 1.0;
            for (int j = 0; j < l; ++j) entry *= rho(dx[static_cast<std::size_t>(j)], dy[static_cast<std::size_t>(j)]);
            result += entry * unitary(y, x);
        }
    }
    return result;
}

namespace {

void validate_couplings(const CouplingMatrix& u, int n) {
    if (u.rows() != n || u.cols() != n) throw std::invalid_argument("coupling matrix must be n x n");
    if (!u.allFinite()) throw std::invalid_argument("coupling matrix has non-finite entries");
    const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
    if ((u - u.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("coupling matrix must be symmetric");
    }
}

// Nuclear product state with atom k in basis column x_k; atom k is digit k.
Eigen::VectorXcd product_vector(const std::vector<int>& x, const Eigen::MatrixXcd& basis) {
    const int d = static_cast<int>(basis.rows());
    const int n = static_cast<int>(x.size());
    const long long size = int_pow(d, n);
    Eigen::VectorXcd v(size);
    for (long long y = 0; y < size; ++y) {
        const auto dy = digits_of(y, d, n);
        cd a = 1.0;
        for (int k = 0; k < n; ++k) a *= basis(dy[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(k)]);
        v(y) = a;
    }
    return v;
}

}  // namespace

SignalCurve full_hilbert_signal(const RamseyParams& params, const Spectrum& p,
                                const std::optional<CouplingMatrix>& couplings,
                                const std::optional<Eigen::MatrixXcd>& basis) {
    params.validate();
    const int n = params.n;
    const int d = p.dim();
    if (int_pow(2 * d, n) > 5000) throw SizeLimitError("full_hilbert_signal: (2d)^n exceeds 5000");
    const CouplingMatrix u = couplings ? *couplings : CouplingMatrix::Constant(n, n, params.U);
    validate_couplings(u, n);
    const Eigen::MatrixXcd nuclear_basis = basis ? *basis : Eigen::MatrixXcd::Identity(d, d);
    if (nuclear_basis.rows() != d || nuclear_basis.cols() != d) throw std::invalid_argument("basis has wrong shape");

    const auto nuc = static_cast<Eigen::Index>(int_pow(d, n));
    const int configs = 1 << n;

    // Initial product eigenvectors of rho^{(x)n} as columns, with weights.
    Eigen::MatrixXcd phi(nuc, nuc);
    std::vector<double> weight(static_cast<std::size_t>(nuc));
    for (Eigen::Index x = 0; x < nuc; ++x) {
        const auto dx = digits_of(x, d, n);
        double wx = 1.0;
        for (int k = 0; k < n; ++k) wx *= p[dx[static_cast<std::size_t>(k)]];
        weight[static_cast<std::size_t>(x)] = wx;
        phi.col(x) = product_vector(dx, nuclear_basis);
    }

    // H_D per electronic configuration (bit k set = atom k excited).
    struct Block {
        Eigen::VectorXd energies;
        Eigen::MatrixXcd vectors;
        Eigen::MatrixXcd projected;  // vectors^dagger * (pulse amplitude) * phi
    };
    const double c = std::cos(params.beta / 2), s = std::sin(params.beta / 2);
    std::vector<Block> blocks(static_cast<std::size_t>(configs));
    for (int e = 0; e < configs; ++e) {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nuc, nuc);
        int excited = 0;
        for (int k = 0; k < n; ++k) excited += (e >> k) & 1;
        for (int j = 0; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                if (((e >> j) & 1) || ((e >> k) & 1)) continue;
                for (Eigen::Index y = 0; y < nuc; ++y) {
                    auto dy = digits_of(y, d, n);
                    h(y, y) += u(j, k);
                    std::swap(dy[static_cast<std::size_t>(j)], dy[static_cast<std::size_t>(k)]);
                    h(index_of_digits(dy, d), y) -= u(j, k);
                }
            }
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
        Block& b = blocks[static_cast<std::size_t>(e)];
        b.energies = solver.eigenvalues().array() - params.delta * excited;
        b.vectors = solver.eigenvectors().cast<cd>();
        const cd amplitude = std::pow(c, n - excited) * std::pow(-I * s, excited);
        b.projected = amplitude * (b.vectors.adjoint() * phi);
    }

    SignalCurve curve{params, {}, SignalMethod::oracle, std::nullopt};
    Eigen::MatrixXcd psi(static_cast<Eigen::Index>(configs) * nuc, nuc);
    for (double tau : params.taus) {
        for (int e = 0; e < configs; ++e) {
            const Block& b = blocks[static_cast<std::size_t>(e)];
            Eigen::VectorXcd phases(nuc);
            for (Eigen::Index k = 0; k < nuc; ++k) phases(k) = std::polar(1.0, -wrap_phase(b.energies(k) * tau));
            psi.middleRows(e * nuc, nuc) = b.vectors * (phases.asDiagonal() * b.projected);
        }
        // Closing pulse exp(+i beta/2 sigma_x) on each atom.
        for (int k = 0; k < n; ++k) {
            for (int e = 0; e < configs; ++e) {
                if ((e >> k) & 1) continue;
                const int f = e | (1 << k);
                const Eigen::MatrixXcd g_rows = psi.middleRows(e * nuc, nuc);
                const Eigen::MatrixXcd e_rows = psi.middleRows(f * nuc, nuc);
                psi.middleRows(e * nuc, nuc) = c * g_rows + (I * s) * e_rows;
                psi.middleRows(f * nuc, nuc) = (I * s) * g_rows + c * e_rows;
            }
        }
        double ne = 0.0;
        for (int e = 0; e < configs; ++e) {
            int excited = 0;
            for (int k = 0; k < n; ++k) excited += (e >> k) & 1;
            if (excited == 0) continue;
            const Eigen::VectorXd col_norms = psi.middleRows(e * nuc, nuc).colwise().squaredNorm();
            for (Eigen::Index x = 0; x < nuc; ++x) ne += excited * weight[static_cast<std::size_t>(x)] * col_norms(x);
        }
        curve.values.push_back(ne / n);
    }
    return curve;
}

CouplingMatrix random_couplings(int n, double U, double dU, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    CouplingMatrix u = CouplingMatrix::Constant(n, n, U);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            u(j, k) = U + dU * (uniform(rng) - 0.5);
            u(k, j) = u(j, k);
        }
    }
    return u;
}

CouplingEnsemble random_coupling_ensemble(const RamseyParams& params, const Spectrum& p, double dU,
                                          int realizations, std::uint64_t seed) {
    if (realizations < 1) throw std::invalid_argument("need at least one realization");
    CouplingEnsemble out{dU, seed, {}, {}, {}};
    std::mt19937_64 rng(seed);
    for (int r = 0; r < realizations; ++r) {
        const CouplingMatrix u = random_couplings(params.n, params.U, dU, rng);
        out.realizations.push_back(full_hilbert_signal(params, p, u).values);
    }
    const std::size_t points = params.taus.size();
    out.mean.assign(points, 0.0);
    out.stddev.assign(points, 0.0);
    for (const auto& curve : out.realizations)
        for (std::size_t i = 0; i < points; ++i) out.mean[i] += curve[i] / realizations;
    if (realizations > 1) {
        for (const auto& curve : out.realizations)
            for (std::size_t i = 0; i < points; ++i) out.stddev[i] += std::pow(curve[i] - out.mean[i], 2);
        for (double& v : out.stddev) v = std::sqrt(v / (realizations - 1));
    }
    return out;
}

}  // namespace alkspec
