#include "alkspec/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "alkspec/errors.hpp"

namespace alkspec {

PermOp::PermOp(std::vector<int> one_line) : image_(std::move(one_line)) {
    const int m = size();
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
        if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("not a permutation in one-line notation");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
    std::fill(seen.begin(), seen.end(), false);
    for (int start = 0; start < m; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> cycle;
        for (int i = start; !seen[static_cast<std::size_t>(i)]; i = image_[static_cast<std::size_t>(i)]) {
            seen[static_cast<std::size_t>(i)] = true;
            cycle.push_back(i);
        }
        cycles_.push_back(std::move(cycle));
    }
}

PermOp PermOp::identity(int m) {
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 0);
    return PermOp(std::move(v));
}

PermOp PermOp::random(int m, std::mt19937_64& rng) {
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    return PermOp(std::move(v));
}

std::vector<int> PermOp::cycle_lengths() const {
    std::vector<int> out;
    for (const auto& c : cycles_) out.push_back(static_cast<int>(c.size()));
    return out;
}

double permutation_trace(const PermOp& sigma, const Spectrum& p) {
    double product = 1.0;
    for (const auto& cycle : sigma.cycles()) {
        double power_sum = 0.0;
        for (double pr : p.values()) power_sum += std::pow(pr, static_cast<double>(cycle.size()));
        product *= power_sum;
    }
    return product;
}

std::complex<double> permutation_trace_matrix(const PermOp& sigma, const Eigen::MatrixXcd& rho) {
    const int m = sigma.size();
    const int d = static_cast<int>(rho.rows());
    if (rho.cols() != d) throw std::invalid_argument("rho must be square");
    if (m > 8 || d > 4) throw SizeLimitError("permutation_trace_matrix supports m <= 8 and d <= 4");
    std::vector<int> x(static_cast<std::size_t>(m), 0);
    std::complex<double> total = 0.0;
    while (true) {
        std::complex<double> term = 1.0;
        for (int j = 0; j < m; ++j) term *= rho(x[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(sigma(j))]);
        total += term;
        int pos = 0;
        while (pos < m && ++x[static_cast<std::size_t>(pos)] == d) x[static_cast<std::size_t>(pos++)] = 0;
        if (pos == m) break;
    }
    return total;
}

}  // namespace alkspec
