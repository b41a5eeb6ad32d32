#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "alkspec/meanfield.hpp"
#include "alkspec/ramsey.hpp"
#include "alkspec/spectrum.hpp"

namespace alkspec::cli {

/// Parsed `start:step:count`.
struct TauGrid {
    double start = 0.0;
    double step = 0.01;
    int count = 200;

    static TauGrid parse(const std::string& text);
    std::string to_string() const;
    std::vector<double> values() const;
};

/// Every parameter of one CLI invocation. Keys of to_json match the long flag
/// names with '-' replaced by '_'.
struct RunConfig {
    std::string command;

    int n = 10;
    std::vector<double> p = {0.7, 0.2, 0.1};
    double beta = 1.5707963267948966;
    double delta = 0.0;
    double U = 1.0;
    std::string tau_grid = "auto";
    std::string method = "exact";
    double k_sigma = 5.0;

    // Oracle imperfections.
    double dU = 0.0;
    int realizations = 200;

    // Estimation.
    std::uint64_t seed = 1;
    int shots = 100;
    std::string noise = "binomial";
    std::string model = "exact";
    int starts = 16;
    bool noiseless = false;
    std::string records;

    // EYD output.
    bool energy = false;

    // Validation.
    bool quick = false;

    // Physical parameters (SI).
    double a_gg = 5.1e-9;
    double a_ee = 0.0;
    double a_eg_plus = 0.0;
    double a_eg_minus = 0.0;
    double omega_perp = 2.0 * 3.14159265358979323846 * 1.0e4;
    double L = 10.0e-6;
    double gamma = 0.0;
    int atoms = 16;

    // Solver.
    double tolerance = 1e-11;
    int initial_steps = 0;

    std::string out = "alkspec";

    /// Spectrum from p: entries in [0, 1] summing to 1 within 1e-9, any order.
    Spectrum spectrum() const;
    RamseyParams ramsey() const;
    PhysicalParams physical() const;
    SolverOptions solver() const;
    std::vector<std::string> methods() const;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Missing keys keep their defaults; unknown keys throw std::invalid_argument.
RunConfig config_from_json(const nlohmann::json& j);

}  // namespace alkspec::cli
