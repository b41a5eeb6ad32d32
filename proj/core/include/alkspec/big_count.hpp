#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace alkspec {

/// Exact non-negative integer of unbounded magnitude.
///
/// Irrep dimensions and Kostka numbers overflow 64 bits around n = 25, so all
/// counting is done exactly and only converted to floating point at the last
/// step, in log space.
class BigCount {
public:
    using Integer = boost::multiprecision::cpp_int;

    BigCount() = default;
    BigCount(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    explicit BigCount(Integer v);

    const Integer& value() const { return value_; }

    bool is_zero() const { return value_.is_zero(); }

    /// Natural logarithm; -infinity for zero. Relative error is at the level
    /// of one double rounding regardless of magnitude.
    double log() const;

    /// Nearest double; +infinity once the value exceeds the double range.
    double to_double() const;

    std::string to_string() const { return value_.str(); }

    BigCount& operator+=(const BigCount& o) {
        value_ += o.value_;
        return *this;
    }
    BigCount& operator*=(const BigCount& o) {
        value_ *= o.value_;
        return *this;
    }
    friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }
    friend BigCount operator*(BigCount a, const BigCount& b) { return a *= b; }
    friend bool operator==(const BigCount& a, const BigCount& b) { return a.value_ == b.value_; }
    friend auto operator<=>(const BigCount& a, const BigCount& b) {
        return a.value_ < b.value_ ? std::strong_ordering::less
             : a.value_ > b.value_ ? std::strong_ordering::greater
                                   : std::strong_ordering::equal;
    }

private:
    Integer value_{0};
};

BigCount factorial(unsigned n);
BigCount binomial(unsigned n, unsigned k);

}  // namespace alkspec
