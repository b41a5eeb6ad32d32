#include "alkspec/big_count.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace alkspec {

BigCount::BigCount(Integer v) : value_(std::move(v)) {
    if (value_ < 0) throw std::invalid_argument("BigCount must be non-negative");
}

double BigCount::log() const {
    if (value_.is_zero()) return -std::numeric_limits<double>::infinity();
    const unsigned msb = boost::multiprecision::msb(value_);
    if (msb < 1000) return std::log(value_.convert_to<double>());
    // Keep 64 significant bits; the dropped tail is below double resolution.
    const unsigned shift = msb - 63;
    const Integer top = value_ >> shift;
    return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

double BigCount::to_double() const {
    if (!value_.is_zero() && boost::multiprecision::msb(value_) >= 1024) {
        return std::numeric_limits<double>::infinity();
    }
    return value_.convert_to<double>();
}

BigCount factorial(unsigned n) {
    BigCount::Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return BigCount(std::move(r));
}

BigCount binomial(unsigned n, unsigned k) {
    if (k > n) return BigCount(0);
    if (k > n - k) k = n - k;
    BigCount::Integer r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return BigCount(std::move(r));
}

}  // namespace alkspec
