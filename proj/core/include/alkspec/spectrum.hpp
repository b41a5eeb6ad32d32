#pragma once

#include <span>
#include <string>
#include <vector>

namespace alkspec {

/// Eigenvalues p_1 >= ... >= p_d of a density matrix.
class Spectrum {
public:
    /// Validates: entries in [0,1], sorted descending, sum within 1e-12 of 1.
    explicit Spectrum(std::vector<double> p);
    Spectrum(std::initializer_list<double> p) : Spectrum(std::vector<double>(p)) {}

    /// Sorts descending and rescales to unit sum. Entries must be >= 0 with a
    /// positive total.
    static Spectrum normalized(std::vector<double> weights);

    /// Maximally mixed spectrum of dimension d.
    static Spectrum uniform(int d);

    int dim() const { return static_cast<int>(p_.size()); }
    double operator[](int r) const { return p_[static_cast<std::size_t>(r)]; }
    std::span<const double> values() const { return p_; }
    const std::vector<double>& vector() const { return p_; }

    std::string to_string() const;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::vector<double> p_;
};

}  // namespace alkspec
