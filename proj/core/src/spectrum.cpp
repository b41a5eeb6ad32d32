#include "alkspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace alkspec {

Spectrum::Spectrum(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw std::invalid_argument("spectrum must have at least one entry");
    double sum = 0.0;
    for (std::size_t r = 0; r < p_.size(); ++r) {
        if (!(p_[r] >= 0.0 && p_[r] <= 1.0)) throw std::invalid_argument("spectrum entries must lie in [0,1]");
        if (r > 0 && p_[r] > p_[r - 1]) throw std::invalid_argument("spectrum must be sorted descending");
        sum += p_[r];
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("spectrum must sum to 1");
}

Spectrum Spectrum::normalized(std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("spectrum weights must be finite and >= 0");
        total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("spectrum weights must have a positive sum");
    for (double& w : weights) w /= total;
    std::sort(weights.begin(), weights.end(), std::greater<>());
    return Spectrum(std::move(weights));
}

Spectrum Spectrum::uniform(int d) {
    if (d < 1) throw std::invalid_argument("spectrum dimension must be >= 1");
    return Spectrum::normalized(std::vector<double>(static_cast<std::size_t>(d), 1.0));
}

std::string Spectrum::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t r = 0; r < p_.size(); ++r) os << (r ? "," : "") << p_[r];
    os << ')';
    return os.str();
}

}  // namespace alkspec
