#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>

#include "alkspec/errors.hpp"
#include "alkspec/oracle.hpp"
#include "integrate.hpp"

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

// Single-atom rotation exp(-i theta sigma_x) (x) 1_d, local index mu * d + m.
Eigen::MatrixXcd single_atom_rotation(int d, double theta) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    for (int m = 0; m < d; ++m) {
        r(m, m) = r(d + m, d + m) = std::cos(theta);
        r(m, d + m) = r(d + m, m) = -I * std::sin(theta);
    }
    return r;
}

// Sum over pairs inside `atoms` of coeff * (1 - s_ab) on d^{|atoms|}, digit i
// of the local index belonging to atoms[i].
Eigen::MatrixXd pair_swap_sum(int count, int d, double coeff) {
    const auto size = static_cast<Eigen::Index>(int_pow(d, count));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
    for (int a = 0; a < count; ++a) {
        for (int b = a + 1; b < count; ++b) {
            for (Eigen::Index y = 0; y < size; ++y) {
                auto dy = digits_of(y, d, count);
                h(y, y) += coeff;
                std::swap(dy[static_cast<std::size_t>(a)], dy[static_cast<std::size_t>(b)]);
                h(index_of_digits(dy, d), y) -= coeff;
            }
        }
    }
    return h;
}

struct LossSystem {
    Eigen::Index dim = 0;
    Eigen::MatrixXcd q;          // eigenbasis columns in the extended basis
    Eigen::VectorXcd k;          // complex eigenvalues of H - i gamma/2 sum c^dagger c
    std::vector<Eigen::SparseMatrix<cd>> jumps;  // sqrt(gamma) c in the eigenbasis
    Eigen::MatrixXcd ne_op;      // closing-pulse-rotated n_e in the eigenbasis
    Eigen::VectorXd n_in;        // in-trap atom number per eigenbasis column
};

LossSystem build_system(int n, int d, const RamseyParams& params, double gamma) {
    const int out = 2 * d;
    const int local = 2 * d + 1;
    LossSystem sys;
    sys.dim = static_cast<Eigen::Index>(int_pow(local, n));
    sys.q = Eigen::MatrixXcd::Zero(sys.dim, sys.dim);
    sys.k.resize(sys.dim);
    sys.n_in.resize(sys.dim);

    // Group extended basis states by electronic configuration (0 g, 1 e, 2 out).
    const long long config_count = int_pow(3, n);
    std::vector<std::vector<long long>> members(static_cast<std::size_t>(config_count));
    for (long long x = 0; x < sys.dim; ++x) {
        const auto dx = digits_of(x, local, n);
        std::vector<int> config(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            const int v = dx[static_cast<std::size_t>(a)];
            config[static_cast<std::size_t>(a)] = v == out ? 2 : v / d;
        }
        members[static_cast<std::size_t>(index_of_digits(config, 3))].push_back(x);
    }

    Eigen::Index column = 0;
    for (long long ci = 0; ci < config_count; ++ci) {
        const auto config = digits_of(ci, 3, n);
        std::vector<int> ground, excited;
        for (int a = 0; a < n; ++a) {
            if (config[static_cast<std::size_t>(a)] == 0) ground.push_back(a);
            if (config[static_cast<std::size_t>(a)] == 1) excited.push_back(a);
        }
        const int ng = static_cast<int>(ground.size()), ne = static_cast<int>(excited.size());
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hg(pair_swap_sum(ng, d, params.U));
        // Nuclear-singlet projector for d = 2 is (1 - s)/2.
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> le(pair_swap_sum(ne, d, 0.5));
        const auto gsize = hg.eigenvalues().size(), esize = le.eigenvalues().size();
        for (Eigen::Index alpha = 0; alpha < gsize; ++alpha) {
            for (Eigen::Index beta = 0; beta < esize; ++beta) {
                for (long long x : members[static_cast<std::size_t>(ci)]) {
                    const auto dx = digits_of(x, local, n);
                    std::vector<int> yg, ye;
                    for (int a : ground) yg.push_back(dx[static_cast<std::size_t>(a)]);
                    for (int a : excited) ye.push_back(dx[static_cast<std::size_t>(a)] - d);
                    sys.q(x, column) = hg.eigenvectors()(index_of_digits(yg, d), alpha) *
                                       le.eigenvectors()(index_of_digits(ye, d), beta);
                }
                sys.k(column) = cd(hg.eigenvalues()(alpha) - params.delta * ne, -0.5 * gamma * le.eigenvalues()(beta));
                sys.n_in(column) = ng + ne;
                ++column;
            }
        }
    }

    if (gamma > 0.0) {
        const double amp = std::sqrt(gamma / 2.0);
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(sys.dim, sys.dim);
                for (long long x = 0; x < sys.dim; ++x) {
                    auto dx = digits_of(x, local, n);
                    const int va = dx[static_cast<std::size_t>(a)], vb = dx[static_cast<std::size_t>(b)];
                    if (va < d || va >= out || vb < d || vb >= out) continue;
                    const int ma = va - d, mb = vb - d;
                    if (ma == mb) continue;
                    dx[static_cast<std::size_t>(a)] = dx[static_cast<std::size_t>(b)] = out;
                    c(index_of_digits(dx, local), x) = ma < mb ? amp : -amp;
                }
                const Eigen::MatrixXcd ct = sys.q.adjoint() * c * sys.q;
                sys.jumps.push_back(ct.sparseView(0.0, 0.0));
            }
        }
    }

    // Closing pulse exp(+i beta/2 sigma_x) folded into the measured operator.
    const Eigen::MatrixXcd r = single_atom_rotation(d, -params.beta / 2);
    Eigen::MatrixXcd pe = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    pe.bottomRightCorner(d, d).setIdentity();
    const Eigen::MatrixXcd o = r.adjoint() * pe * r;
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(sys.dim, sys.dim);
    for (long long x = 0; x < sys.dim; ++x) {
        auto dx = digits_of(x, local, n);
        for (int a = 0; a < n; ++a) {
            const int va = dx[static_cast<std::size_t>(a)];
            if (va == out) continue;
            for (int v = 0; v < out; ++v) {
                dx[static_cast<std::size_t>(a)] = v;
                op(index_of_digits(dx, local), x) += o(v, va);
            }
            dx[static_cast<std::size_t>(a)] = va;
        }
    }
    sys.ne_op = sys.q.adjoint() * op * sys.q;
    return sys;
}

}  // namespace

DenseState ramsey_initial_state(int n, const Spectrum& p, const std::optional<Eigen::MatrixXcd>& basis) {
    const int d = p.dim();
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const long long dim = int_pow(2 * d, n);
    if (dim > 5000) throw SizeLimitError("ramsey_initial_state: (2d)^n exceeds 5000");
    Eigen::MatrixXcd local = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    local.topLeftCorner(d, d) = basis ? density_matrix(p, *basis) : density_matrix(p, Eigen::MatrixXcd::Identity(d, d));
    DenseState state{Eigen::MatrixXcd(dim, dim)};
    for (long long x = 0; x < dim; ++x) {
        const auto dx = digits_of(x, 2 * d, n);
        for (long long y = 0; y < dim; ++y) {
            const auto dy = digits_of(y, 2 * d, n);
            cd v = 1.0;
            for (int a = 0; a < n && v != 0.0; ++a) v *= local(dx[static_cast<std::size_t>(a)], dy[static_cast<std::size_t>(a)]);
            state.rho(x, y) = v;
        }
    }
    return state;
}

std::vector<LossPoint> lindblad_loss_evolve(const DenseState& initial, const RamseyParams& params, double gamma,
                                            const LindbladOptions& opts) {
    params.validate();
    const int n = params.n;
    const int d = 2;
    if (n > 4) throw SizeLimitError("lindblad_loss_evolve supports n <= 4");
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    const long long in_dim = int_pow(2 * d, n);
    if (initial.dim() != in_dim) throw std::invalid_argument("initial state must live on (C^2 (x) C^2)^n");

    const LossSystem sys = build_system(n, d, params, gamma);
    const int local = 2 * d + 1;

    // First pulse on the in-trap space, then embed into the extended space.
    const Eigen::MatrixXcd r = single_atom_rotation(d, params.beta / 2);
    Eigen::MatrixXcd w(in_dim, in_dim);
    std::vector<long long> embed(static_cast<std::size_t>(in_dim));
    for (long long x = 0; x < in_dim; ++x) {
        const auto dx = digits_of(x, 2 * d, n);
        embed[static_cast<std::size_t>(x)] = index_of_digits(dx, local);
        for (long long y = 0; y < in_dim; ++y) {
            const auto dy = digits_of(y, 2 * d, n);
            cd v = 1.0;
            for (int a = 0; a < n && v != 0.0; ++a) v *= r(dx[static_cast<std::size_t>(a)], dy[static_cast<std::size_t>(a)]);
            w(x, y) = v;
        }
    }
    const Eigen::MatrixXcd pulsed = w * initial.rho * w.adjoint();
    Eigen::MatrixXcd ext = Eigen::MatrixXcd::Zero(sys.dim, sys.dim);
    for (long long x = 0; x < in_dim; ++x)
        for (long long y = 0; y < in_dim; ++y) ext(embed[static_cast<std::size_t>(x)], embed[static_cast<std::size_t>(y)]) = pulsed(x, y);
    const Eigen::MatrixXcd rho0 = sys.q.adjoint() * ext * sys.q;
    const double trace0 = rho0.trace().real();

    Eigen::MatrixXcd lambda(sys.dim, sys.dim);
    for (Eigen::Index a = 0; a < sys.dim; ++a)
        for (Eigen::Index b = 0; b < sys.dim; ++b) lambda(a, b) = -I * (sys.k(a) - std::conj(sys.k(b)));

    const auto feed = [&](const Eigen::MatrixXcd& rho) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sys.dim, sys.dim);
        for (const auto& c : sys.jumps) {
            const Eigen::MatrixXcd left = c * rho;
            out.noalias() += left * c.adjoint();
        }
        return out;
    };
    const std::size_t points = params.taus.size();
    const double tau_max = params.taus.empty() ? 0.0 : params.taus.back();
    const double pairs = 0.5 * n * (n - 1);

    const auto run = [&](int steps) {
        Eigen::VectorXd result(3 * static_cast<Eigen::Index>(points));
        Eigen::MatrixXcd rho = rho0;
        double t = 0.0;
        for (std::size_t i = 0; i < points; ++i) {
            const double span = params.taus[i] - t;
            if (span > 0.0) {
                const int sub = std::max(1, static_cast<int>(std::ceil(span / tau_max * steps)));
                const double h = span / sub;
                const Eigen::MatrixXcd full = (lambda * h).array().exp().matrix();
                const Eigen::MatrixXcd half = (lambda * (0.5 * h)).array().exp().matrix();
                for (int s = 0; s < sub; ++s) {
                    if (sys.jumps.empty()) {
                        rho = rho.cwiseProduct(full);
                        continue;
                    }
                    const Eigen::MatrixXcd k1 = feed(rho);
                    const Eigen::MatrixXcd k2 = feed((rho + (0.5 * h) * k1).cwiseProduct(half));
                    const Eigen::MatrixXcd rho_half = rho.cwiseProduct(half);
                    const Eigen::MatrixXcd k3 = feed(rho_half + (0.5 * h) * k2);
                    const Eigen::MatrixXcd k4 = feed(rho.cwiseProduct(full) + h * k3.cwiseProduct(half));
                    rho = (rho + (h / 6.0) * k1).cwiseProduct(full) + (h / 3.0) * (k2 + k3).cwiseProduct(half) +
                          (h / 6.0) * k4;
                }
                t = params.taus[i];
            }
            const auto idx = static_cast<Eigen::Index>(i);
            result(idx) = (sys.ne_op.transpose().cwiseProduct(rho)).sum().real();
            result(static_cast<Eigen::Index>(points) + idx) = (sys.n_in.cast<cd>().cwiseProduct(rho.diagonal())).sum().real();
            result(2 * static_cast<Eigen::Index>(points) + idx) = rho.trace().real();
        }
        return result;
    };

    const int steps = std::max(opts.initial_steps, static_cast<int>(std::ceil(8.0 * gamma * pairs * tau_max)));
    const Eigen::VectorXd result = sys.jumps.empty()
                                       ? run(steps)
                                       : detail::converge_by_halving(steps, opts.tolerance, opts.max_refinements, run);

    std::vector<LossPoint> out;
    for (std::size_t i = 0; i < points; ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        LossPoint pt{params.taus[i], result(idx), result(static_cast<Eigen::Index>(points) + idx),
                     result(2 * static_cast<Eigen::Index>(points) + idx)};
        if (pt.total > trace0 + 1e-9) throw SolverError("Lindblad evolution increased the total trace");
        out.push_back(pt);
    }
    return out;
}

}  // namespace alkspec
