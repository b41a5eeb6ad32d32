#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "alkspec/ramsey.hpp"
#include "alkspec/spectrum.hpp"
#include "alkspec/young.hpp"

namespace alkspec {

/// Shots taken at one dark time. Either per-shot counts of e atoms, or only
/// their mean (counts empty), which also allows noiseless records.
struct MeasurementRecord {
    double tau = 0.0;
    int n = 1;
    int shots = 1;
    std::vector<int> counts;
    double mean_count = 0.0;

    static MeasurementRecord from_counts(double tau, int n, std::vector<int> counts);
    static MeasurementRecord from_mean(double tau, int n, int shots, double mean_count);

    /// Shot-averaged n_e / n.
    double fraction() const { return mean_count / n; }
    void validate() const;
};

enum class NoiseModel { binomial, gaussian };
enum class FitModel { exact, asymptotic };

std::string to_string(NoiseModel m);
std::string to_string(FitModel m);
NoiseModel parse_noise_model(const std::string& s);
FitModel parse_fit_model(const std::string& s);

/// Draws shots_per_tau outcomes at every dark time from the exact signal s:
/// Binomial(n, s), or Normal(n s, n (s - s^2)) rounded and clipped to [0, n].
std::vector<MeasurementRecord> simulate_measurements(const RamseyParams& params, const Spectrum& p, int shots_per_tau,
                                                     std::uint64_t seed, NoiseModel noise = NoiseModel::binomial);

/// Records whose mean count equals n times the model signal.
std::vector<MeasurementRecord> noiseless_measurements(const RamseyParams& params, const Spectrum& p, int shots_per_tau,
                                                      FitModel model = FitModel::exact);

struct FitOptions {
    FitModel model = FitModel::exact;
    int starts = 16;
    std::uint64_t seed = 0;
    std::optional<Spectrum> init;
    /// Lower bound on the per-shot variance of n_e / n in the weights.
    double variance_floor = 1e-6;
    int reweight_rounds = 5;
    int max_evaluations = 4000;
};

struct EstimationResult {
    Spectrum p_hat = Spectrum::uniform(1);
    /// Weighted sum of squared residuals at p_hat.
    double residual_norm = 0.0;
    Eigen::MatrixXd covariance;
    bool converged = false;
    FitModel model = FitModel::exact;
    int starts = 0;
    std::uint64_t seed = 0;
    std::vector<double> taus;
    std::vector<double> observed;
    std::vector<double> fitted;
};

/// Weighted least-squares fit of the spectrum to shot-averaged records.
/// base supplies n, beta, delta and U; dark times come from the records.
/// Throws std::invalid_argument when fewer than d distinct dark times are given.
EstimationResult fit_spectrum(const std::vector<MeasurementRecord>& records, const RamseyParams& base, int d,
                              const FitOptions& opts = {});

/// Row-length estimator (lambda_1 / n, ..., lambda_d / n).
Spectrum estimate_from_eyd_sample(const YoungDiagram& lambda, int n, int d);

/// Stick-breaking map from R^{d-1} to the simplex (unsorted):
/// p_i = sigmoid(z_i) prod_{j<i}(1 - sigmoid(z_j)), p_d the remainder.
std::vector<double> stick_breaking(const Eigen::VectorXd& z);
/// Inverse of stick_breaking for strictly positive p.
Eigen::VectorXd stick_breaking_inverse(const std::vector<double>& p);

}  // namespace alkspec
