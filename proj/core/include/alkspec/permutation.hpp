#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "alkspec/spectrum.hpp"

namespace alkspec {

/// Permutation of {0..m-1} in one-line notation (sigma[i] is the image of i),
/// with its cycle decomposition cached.
class PermOp {
public:
    explicit PermOp(std::vector<int> one_line);

    static PermOp identity(int m);
    static PermOp random(int m, std::mt19937_64& rng);

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& one_line() const { return image_; }
    /// Disjoint cycles, each starting at its smallest element; fixed points included.
    const std::vector<std::vector<int>>& cycles() const { return cycles_; }
    std::vector<int> cycle_lengths() const;

private:
    std::vector<int> image_;
    std::vector<std::vector<int>> cycles_;
};

/// Tr(P(sigma) rho^{(x)m}) from the cycle structure: prod_j sum_r p_r^{|sigma_j|}.
double permutation_trace(const PermOp& sigma, const Spectrum& p);

/// The same trace by explicit index contraction against an arbitrary d x d
/// matrix rho: sum_x prod_j rho(x_j, x_{sigma(j)}). Limited to m <= 8, d <= 4.
std::complex<double> permutation_trace_matrix(const PermOp& sigma, const Eigen::MatrixXcd& rho);

}  // namespace alkspec
