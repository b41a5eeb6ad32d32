#include "oracles.hpp"

#include <cmath>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

std::uint64_t count_syt(std::vector<int> rows) {
    const int n = std::accumulate(rows.begin(), rows.end(), 0);
    if (n <= 1) return 1;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const bool corner = rows[i] > 0 && (i + 1 == rows.size() || rows[i + 1] < rows[i]);
        if (!corner) continue;
        --rows[i];
        total += count_syt(rows);
        ++rows[i];
    }
    return total;
}

double hook_dimension(const std::vector<int>& rows) {
    const int n = std::accumulate(rows.begin(), rows.end(), 0);
    double out = std::tgamma(n + 1.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < rows[i]; ++j) {
            int below = 0;
            for (std::size_t k = i + 1; k < rows.size() && rows[k] > j; ++k) ++below;
            out /= rows[i] - j - 1 + below + 1;
        }
    }
    return out;
}

namespace {

struct SsytCounter {
    const std::vector<int>& rows;
    std::vector<int> remaining;
    std::vector<std::vector<int>> grid;
    std::uint64_t count = 0;

    void fill(std::size_t r, int c) {
        if (r == rows.size()) {
            ++count;
            return;
        }
        if (c == rows[r]) {
            fill(r + 1, 0);
            return;
        }
        int lo = 1;
        if (c > 0) lo = std::max(lo, grid[r][c - 1]);
        if (r > 0) lo = std::max(lo, grid[r - 1][c] + 1);
        for (int v = lo; v <= static_cast<int>(remaining.size()); ++v) {
            if (remaining[v - 1] == 0) continue;
            --remaining[v - 1];
            grid[r][c] = v;
            fill(r, c + 1);
            ++remaining[v - 1];
        }
    }
};

}  // namespace

std::uint64_t count_ssyt(const std::vector<int>& rows, const std::vector<int>& content) {
    if (std::accumulate(rows.begin(), rows.end(), 0) != std::accumulate(content.begin(), content.end(), 0)) return 0;
    SsytCounter counter{rows, content, {}};
    for (int r : rows) counter.grid.emplace_back(static_cast<std::size_t>(r), 0);
    counter.fill(0, 0);
    return counter.count;
}

std::uint64_t partition_count(int n, int d) {
    if (n == 0) return 1;
    if (n < 0 || d == 0) return 0;
    return partition_count(n, d - 1) + partition_count(n - d, d);
}

double schur_bialternant(const std::vector<int>& rows, const std::vector<double>& x) {
    const int d = static_cast<int>(x.size());
    Eigen::MatrixXd num(d, d), den(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const int lambda_j = j < static_cast<int>(rows.size()) ? rows[j] : 0;
            num(i, j) = std::pow(x[i], lambda_j + d - 1 - j);
            den(i, j) = std::pow(x[i], d - 1 - j);
        }
    }
    return num.determinant() / den.determinant();
}

double eyd_probability(const std::vector<int>& rows, const std::vector<double>& p) {
    return hook_dimension(rows) * schur_bialternant(rows, p);
}

Eigen::MatrixXd swap_matrix(int d, int l, int a, int b) {
    int dim = 1;
    for (int k = 0; k < l; ++k) dim *= d;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
    for (int x = 0; x < dim; ++x) {
        std::vector<int> digits(static_cast<std::size_t>(l));
        int rest = x;
        for (int k = l - 1; k >= 0; --k) {
            digits[k] = rest % d;
            rest /= d;
        }
        std::swap(digits[a], digits[b]);
        int y = 0;
        for (int k = 0; k < l; ++k) y = y * d + digits[k];
        s(y, x) = 1.0;
    }
    return s;
}

std::complex<double> swap_sum_trace(const Eigen::MatrixXcd& rho, int l, double alpha) {
    const int d = static_cast<int>(rho.rows());
    Eigen::MatrixXcd state = Eigen::MatrixXcd::Ones(1, 1);
    for (int k = 0; k < l; ++k) state = Eigen::kroneckerProduct(state, rho).eval();
    const Eigen::Index dim = state.rows();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < l - 1; ++j) {
        m += Eigen::MatrixXcd::Identity(dim, dim) - swap_matrix(d, l, j, l - 1).cast<std::complex<double>>();
    }
    const Eigen::MatrixXcd b = (std::complex<double>(0.0, alpha) * m).exp();
    return (state * b).trace();
}

std::complex<double> cycle_trace(const std::vector<int>& cycle_lengths, const Eigen::MatrixXcd& rho) {
    std::complex<double> out = 1.0;
    for (int c : cycle_lengths) {
        Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(rho.rows(), rho.cols());
        for (int k = 0; k < c; ++k) power = power * rho;
        out *= power.trace();
    }
    return out;
}

}  // namespace oracle
