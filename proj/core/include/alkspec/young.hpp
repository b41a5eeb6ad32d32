#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alkspec/big_count.hpp"

namespace alkspec {

/// Partition of n into weakly decreasing rows. Trailing zero rows are
/// accepted on construction and stripped, so two diagrams compare equal iff
/// their nonzero rows coincide.
class YoungDiagram {
public:
    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<int> rows);
    YoungDiagram(std::initializer_list<int> rows) : YoungDiagram(std::vector<int>(rows)) {}

    int boxes() const { return boxes_; }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    /// Length of row i (1-based); zero past the last nonzero row.
    int row(int i) const { return i >= 1 && i <= num_rows() ? rows_[i - 1] : 0; }
    const std::vector<int>& rows() const { return rows_; }
    /// Rows padded with zeros to length d (d >= num_rows()).
    std::vector<int> padded(int d) const;

    std::string to_string() const;

    friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
    friend auto operator<=>(const YoungDiagram& a, const YoungDiagram& b) { return a.rows_ <=> b.rows_; }

private:
    std::vector<int> rows_;
    int boxes_ = 0;
};

/// All partitions of n with at most d rows in reverse-lexicographic order:
/// (n) first, the most balanced diagram last.
std::vector<YoungDiagram> enumerate_diagrams(int n, int d);

/// Dimension of the S_n irrep lambda from the shifted-row-length product
/// n!/(l_1!...l_d!) prod_{i<j}(l_i - l_j), l_i = lambda_i + d - i.
/// Throws if lambda has more than d nonzero rows.
BigCount dimension_sn(const YoungDiagram& lambda, int d);
BigCount dimension_sn(const YoungDiagram& lambda);

/// Dimension of the SU(d) irrep lambda.
BigCount dimension_su(const YoungDiagram& lambda, int d);

/// lambda with one box removed from row r (1-based), or nullopt when that
/// would not leave a valid diagram.
std::optional<YoungDiagram> remove_box(const YoungDiagram& lambda, int r);

/// Ratio |lambda^{-r}| / |lambda| of S_n irrep dimensions, zero when the
/// removal is invalid. Evaluated as a product of d small rational factors,
/// never through the (huge) dimensions themselves.
double removal_ratio(const YoungDiagram& lambda, int r);

/// Memoized count of box-removal paths between diagrams, i.e. the
/// multiplicity of xi in the restriction of lambda from S_n to S_{n-w}.
/// One table per computation; not safe for concurrent mutation.
class BranchingTable {
public:
    BigCount multiplicity(const YoungDiagram& lambda, const YoungDiagram& xi);

private:
    std::map<std::pair<std::vector<int>, std::vector<int>>, BigCount> cache_;
};

BigCount branching_multiplicity(const YoungDiagram& lambda, const YoungDiagram& xi);

/// Memoized Kostka numbers K_{lambda,mu}: semistandard tableaux of shape
/// lambda with content mu, by peeling off the largest entry as a horizontal
/// strip. mu need not be sorted.
class KostkaTable {
public:
    BigCount operator()(const YoungDiagram& lambda, std::span<const int> mu);

private:
    BigCount count(const std::vector<int>& shape, std::span<const int> mu);

    std::map<std::pair<std::vector<int>, std::vector<int>>, BigCount> cache_;
};

BigCount kostka(const YoungDiagram& lambda, std::span<const int> mu);

}  // namespace alkspec
