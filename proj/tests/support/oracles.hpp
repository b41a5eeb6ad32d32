#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

// Slow reference implementations used only by the tests. Nothing here calls
// into alkspec, so agreement with the library is a genuine cross-check.
namespace oracle {

/// Number of standard Young tableaux of shape rows, by filling boxes with
/// n, n-1, ... one corner at a time (plain recursion, no memo).
std::uint64_t count_syt(std::vector<int> rows);

/// Hook length formula n! / prod hooks, in double.
double hook_dimension(const std::vector<int>& rows);

/// Semistandard tableaux of the given shape and content, by exhaustive
/// row-by-row filling.
std::uint64_t count_ssyt(const std::vector<int>& rows, const std::vector<int>& content);

/// Partitions of n with at most d parts via p(n, d) = p(n, d-1) + p(n-d, d).
std::uint64_t partition_count(int n, int d);

/// Schur polynomial by the bialternant det(x_i^{lambda_j + d - j}) / Vandermonde.
/// The x must be pairwise distinct.
double schur_bialternant(const std::vector<int>& rows, const std::vector<double>& x);

/// Pr(lambda | n, p) = hook_dimension * schur_bialternant.
double eyd_probability(const std::vector<int>& rows, const std::vector<double>& p);

/// Dense SWAP of tensor factors a and b on (C^d)^{(x)l}.
Eigen::MatrixXd swap_matrix(int d, int l, int a, int b);

/// Tr(rho^{(x)l} exp(i alpha sum_{j<l-1}(1 - s_{j,l-1}))) with the
/// exponential taken by Eigen's MatrixFunctions.
std::complex<double> swap_sum_trace(const Eigen::MatrixXcd& rho, int l, double alpha);

/// Product prod_j Tr(rho^{c_j}) over cycle lengths c_j.
std::complex<double> cycle_trace(const std::vector<int>& cycle_lengths, const Eigen::MatrixXcd& rho);

}  // namespace oracle
