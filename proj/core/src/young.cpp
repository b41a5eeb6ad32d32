#include "alkspec/young.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace alkspec {

YoungDiagram::YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i] < 0) throw std::invalid_argument("Young diagram rows must be non-negative");
        if (i > 0 && rows_[i] > rows_[i - 1]) {
            throw std::invalid_argument("Young diagram rows must be weakly decreasing");
        }
    }
    while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
    boxes_ = std::accumulate(rows_.begin(), rows_.end(), 0);
}

std::vector<int> YoungDiagram::padded(int d) const {
    if (d < num_rows()) throw std::invalid_argument("diagram has more rows than requested width");
    std::vector<int> out(rows_);
    out.resize(static_cast<std::size_t>(d), 0);
    return out;
}

std::string YoungDiagram::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < rows_.size(); ++i) os << (i ? "," : "") << rows_[i];
    os << ')';
    return os.str();
}

namespace {

void enumerate_into(int remaining, int max_part, int rows_left, std::vector<int>& prefix,
                    std::vector<YoungDiagram>& out) {
    if (remaining == 0) {
        out.emplace_back(prefix);
        return;
    }
    if (rows_left == 0) return;
    const int lo = (remaining + rows_left - 1) / rows_left;
    for (int part = std::min(remaining, max_part); part >= lo; --part) {
        prefix.push_back(part);
        enumerate_into(remaining - part, part, rows_left - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<YoungDiagram> enumerate_diagrams(int n, int d) {
    if (n < 0 || d < 1) throw std::invalid_argument("enumerate_diagrams requires n >= 0, d >= 1");
    std::vector<YoungDiagram> out;
    std::vector<int> prefix;
    enumerate_into(n, n, d, prefix, out);
    return out;
}

BigCount dimension_sn(const YoungDiagram& lambda, int d) {
    if (lambda.num_rows() > d) {
        throw std::invalid_argument("diagram " + lambda.to_string() + " has more than d rows");
    }
    const auto rows = lambda.padded(d);
    std::vector<BigCount::Integer> l(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) l[i] = rows[i] + d - 1 - i;

    BigCount::Integer num = factorial(static_cast<unsigned>(lambda.boxes())).value();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) num *= l[i] - l[j];
    BigCount::Integer den = 1;
    for (int i = 0; i < d; ++i) den *= factorial(static_cast<unsigned>(l[i])).value();
    return BigCount(num / den);
}

BigCount dimension_sn(const YoungDiagram& lambda) {
    return dimension_sn(lambda, std::max(1, lambda.num_rows()));
}

BigCount dimension_su(const YoungDiagram& lambda, int d) {
    if (lambda.num_rows() > d) throw std::invalid_argument("diagram has more than d rows");
    const auto rows = lambda.padded(d);
    BigCount::Integer num = 1, den = 1;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            num *= (rows[i] - i) - (rows[j] - j);
            den *= j - i;
        }
    }
    return BigCount(num / den);
}

std::optional<YoungDiagram> remove_box(const YoungDiagram& lambda, int r) {
    if (r < 1 || lambda.row(r) == 0 || lambda.row(r) == lambda.row(r + 1)) return std::nullopt;
    auto rows = lambda.rows();
    --rows[static_cast<std::size_t>(r - 1)];
    return YoungDiagram(std::move(rows));
}

double removal_ratio(const YoungDiagram& lambda, int r) {
    const int d = lambda.num_rows();
    if (r < 1 || r > d || lambda.row(r) == lambda.row(r + 1)) return 0.0;
    // With l_i = lambda_i + d - i, removing a box lowers l_r by one, so the
    // dimension ratio collapses to (l_r / n) prod_{j != r} (l_r - l_j - 1)/(l_r - l_j).
    const auto shifted = [&](int i) { return lambda.row(i) + d - i; };
    const int lr = shifted(r);
    double ratio = static_cast<double>(lr) / lambda.boxes();
    for (int j = 1; j <= d; ++j) {
        if (j == r) continue;
        const int diff = lr - shifted(j);
        ratio *= static_cast<double>(diff - 1) / diff;
    }
    return ratio;
}

BigCount BranchingTable::multiplicity(const YoungDiagram& lambda, const YoungDiagram& xi) {
    if (xi.boxes() > lambda.boxes()) {
        throw std::invalid_argument("branching target " + xi.to_string() + " is larger than " +
                                    lambda.to_string());
    }
    for (int i = 1; i <= xi.num_rows(); ++i)
        if (xi.row(i) > lambda.row(i)) return BigCount(0);
    if (xi.boxes() == lambda.boxes()) return BigCount(lambda == xi ? 1 : 0);

    auto key = std::make_pair(lambda.rows(), xi.rows());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    BigCount total(0);
    for (int r = 1; r <= lambda.num_rows(); ++r) {
        if (auto smaller = remove_box(lambda, r)) total += multiplicity(*smaller, xi);
    }
    cache_.emplace(std::move(key), total);
    return total;
}

BigCount branching_multiplicity(const YoungDiagram& lambda, const YoungDiagram& xi) {
    BranchingTable table;
    return table.multiplicity(lambda, xi);
}

BigCount KostkaTable::operator()(const YoungDiagram& lambda, std::span<const int> mu) {
    long total = 0;
    for (int m : mu) {
        if (m < 0) throw std::invalid_argument("Kostka content entries must be non-negative");
        total += m;
    }
    if (total != lambda.boxes()) {
        throw std::invalid_argument("Kostka content does not sum to the size of " + lambda.to_string());
    }
    return count(lambda.rows(), mu);
}

BigCount KostkaTable::count(const std::vector<int>& shape, std::span<const int> mu) {
    const std::size_t k = mu.size();
    if (k == 0) return BigCount(shape.empty() ? 1 : 0);
    // Entries <= k fill at most k rows (columns are strict).
    if (shape.size() > k) return BigCount(0);

    auto key = std::make_pair(shape, std::vector<int>(mu.begin(), mu.end()));
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    // The boxes holding the value k form a horizontal strip of size mu[k-1]:
    // nu_i ranges over [shape_{i+1}, shape_i] with sum(shape - nu) = mu[k-1].
    const int strip = mu[k - 1];
    const auto prefix = mu.first(k - 1);
    const std::size_t rows = shape.size();
    std::vector<int> nu(shape);
    BigCount total(0);

    auto recurse = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == rows) {
            if (left == 0) {
                std::vector<int> trimmed(nu);
                while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
                total += count(trimmed, prefix);
            }
            return;
        }
        const int hi = shape[i];
        const int lo = i + 1 < rows ? shape[i + 1] : 0;
        for (int v = hi; v >= lo && hi - v <= left; --v) {
            nu[i] = v;
            self(self, i + 1, left - (hi - v));
        }
        nu[i] = shape[i];
    };
    recurse(recurse, 0, strip);

    cache_.emplace(std::move(key), total);
    return total;
}

BigCount kostka(const YoungDiagram& lambda, std::span<const int> mu) {
    KostkaTable table;
    return table(lambda, mu);
}

}  // namespace alkspec
