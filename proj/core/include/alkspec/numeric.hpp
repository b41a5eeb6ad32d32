#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace alkspec {

/// Streaming log(sum(exp(x_i))).
class LogSumExp {
public:
    void add(double x) {
        if (x == -std::numeric_limits<double>::infinity()) return;
        if (x <= max_) {
            sum_ += std::exp(x - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - x) + 1.0;
            max_ = x;
        }
    }
    double value() const {
        return sum_ == 0.0 ? -std::numeric_limits<double>::infinity() : max_ + std::log(sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

/// x reduced to [-pi, pi].
inline double wrap_phase(double x) { return std::remainder(x, 2.0 * std::numbers::pi); }

}  // namespace alkspec
