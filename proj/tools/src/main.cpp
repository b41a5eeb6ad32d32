// alkspec: Ramsey-signal curves, EYD distributions, spectrum fits and the
// acceptance suite from the command line.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "alkspec/acceptance.hpp"
#include "alkspec/errors.hpp"
#include "alkspec/estimation.hpp"
#include "alkspec/eyd.hpp"
#include "alkspec/meanfield.hpp"
#include "alkspec/oracle.hpp"
#include "alkspec/ramsey.hpp"
#include "alkspec/serialize.hpp"
#include "run_config.hpp"

namespace {

using alkspec::cli::RunConfig;
using nlohmann::json;

enum ExitCode { kOk = 0, kValidationFailed = 1, kConfigError = 2, kSizeLimit = 3, kFitNotConverged = 4 };

class FitNotConverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Binding {
    CLI::Option* option;
    std::string key;
};

class Subcommand {
public:
    Subcommand(CLI::App& app, const std::string& name, const std::string& help, RunConfig& cfg)
        : app_(app.add_subcommand(name, help)), cfg_(cfg) {
        app_->add_option("--config", config_path_, "JSON config file; flags override its values");
    }

    template <class T>
    Subcommand& opt(const std::string& flag, T& field, const std::string& help) {
        CLI::Option* o = app_->add_option(flag, field, help)->capture_default_str();
        bindings_.push_back({o, key_of(flag)});
        return *this;
    }
    Subcommand& list(const std::string& flag, std::vector<double>& field, const std::string& help) {
        CLI::Option* o = app_->add_option(flag, field, help)->delimiter(',')->expected(1, 64);
        bindings_.push_back({o, key_of(flag)});
        return *this;
    }
    Subcommand& flag(const std::string& name, bool& field, const std::string& help) {
        CLI::Option* o = app_->add_flag(name, field, help);
        bindings_.push_back({o, key_of(name)});
        return *this;
    }

    CLI::App* app() const { return app_; }

    /// Defaults, then the config file, then explicitly given flags.
    RunConfig resolve() const {
        json merged = alkspec::cli::to_json(RunConfig{});
        if (!config_path_.empty()) {
            std::ifstream in(config_path_);
            if (!in) throw std::invalid_argument("cannot open config file " + config_path_);
            json file;
            try {
                in >> file;
            } catch (const json::parse_error& e) {
                throw std::invalid_argument("config file is not valid JSON: " + std::string(e.what()));
            }
            alkspec::cli::config_from_json(file);
            merged.update(file);
        }
        const json flags = alkspec::cli::to_json(cfg_);
        for (const auto& b : bindings_) {
            if (b.option->count() > 0) merged[b.key] = flags.at(b.key);
        }
        merged["command"] = app_->get_name();
        return alkspec::cli::config_from_json(merged);
    }

private:
    static std::string key_of(const std::string& flag) {
        std::string key = flag.substr(flag.find_first_not_of('-'));
        for (char& ch : key)
            if (ch == '-') ch = '_';
        return key;
    }

    CLI::App* app_;
    RunConfig& cfg_;
    std::string config_path_;
    std::vector<Binding> bindings_;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    std::cout << "wrote " << path << "\n";
}

std::string csv_with_config(const RunConfig& cfg, const std::string& body) {
    return "# config: " + alkspec::cli::to_json(cfg).dump() + "\n" + body;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// Forty dark times over two periods of the slowest mean-field frequency.
std::string estimation_grid(const RunConfig& cfg) {
    const alkspec::Spectrum p = cfg.spectrum();
    const double c2 = std::pow(std::cos(cfg.beta / 2), 2);
    const double slowest = std::abs(cfg.U) * (cfg.n - 1) * (1.0 - p[0]) * c2;
    if (!(slowest > 0.0)) return "0:0.01:40";
    const alkspec::cli::TauGrid grid{0.0, 2.0 * (2.0 * std::numbers::pi / slowest) / 40, 40};
    return grid.to_string();
}

int cmd_signal(RunConfig cfg) {
    if (cfg.tau_grid == "auto") cfg.tau_grid = "0:0.01:200";
    const alkspec::RamseyParams params = cfg.ramsey();
    const alkspec::Spectrum p = cfg.spectrum();
    const bool all = cfg.method == "all";
    std::map<std::string, std::vector<double>> curves;
    json notes = json::object();
    for (const std::string& method : cfg.methods()) {
        alkspec::SignalCurve curve;
        if (method == "exact") {
            curve = alkspec::exact_signal(params, p);
        } else if (method == "truncated") {
            curve = alkspec::truncated_signal(params, p, cfg.k_sigma);
        } else if (method == "asymptotic") {
            curve = alkspec::asymptotic_signal(params, p);
        } else if (method == "meanfield") {
            curve = alkspec::meanfield_signal(params, p, cfg.solver());
        } else {
            try {
                if (cfg.dU > 0.0) {
                    const auto ensemble =
                        alkspec::random_coupling_ensemble(params, p, cfg.dU, cfg.realizations, cfg.seed);
                    curve = {params, ensemble.mean, alkspec::SignalMethod::oracle, std::nullopt};
                    std::string body = "tau";
                    for (std::size_t r = 0; r < ensemble.realizations.size(); ++r) body += ",r" + std::to_string(r);
                    body += ",mean,stddev\n";
                    for (std::size_t i = 0; i < params.taus.size(); ++i) {
                        body += alkspec::format_double(params.taus[i]);
                        for (const auto& real : ensemble.realizations) body += "," + alkspec::format_double(real[i]);
                        body += "," + alkspec::format_double(ensemble.mean[i]) + "," +
                                alkspec::format_double(ensemble.stddev[i]) + "\n";
                    }
                    write_file(cfg.out + "_ensemble.csv", csv_with_config(cfg, body));
                    write_file(cfg.out + "_ensemble.json",
                               json_text({{"config", alkspec::cli::to_json(cfg)}, {"ensemble", alkspec::to_json(ensemble)}}));
                } else {
                    curve = alkspec::full_hilbert_signal(params, p);
                }
            } catch (const alkspec::SizeLimitError& e) {
                if (!all) throw;
                notes["oracle"] = std::string("skipped: ") + e.what();
                continue;
            }
        }
        curves[method] = curve.values;
        write_file(cfg.out + "_signal_" + method + ".csv", csv_with_config(cfg, alkspec::signal_csv(curve)));
        write_file(cfg.out + "_signal_" + method + ".json",
                   json_text({{"config", alkspec::cli::to_json(cfg)}, {"curve", alkspec::to_json(curve)}}));
    }
    if (curves.size() > 1 && curves.contains("exact")) {
        json deviation = json::object();
        for (const auto& [method, values] : curves) {
            if (method == "exact") continue;
            double worst = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) worst = std::max(worst, std::abs(values[i] - curves["exact"][i]));
            deviation[method] = worst;
        }
        write_file(cfg.out + "_deviation.json",
                   json_text({{"config", alkspec::cli::to_json(cfg)},
                              {"max_abs_deviation_from_exact", deviation},
                              {"notes", notes}}));
    }
    return kOk;
}

int cmd_eyd(const RunConfig& cfg) {
    const alkspec::Spectrum p = cfg.spectrum();
    if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
    const alkspec::EydDistribution dist = alkspec::eyd_distribution(cfg.n, p);
    json payload = alkspec::to_json(dist);
    payload["config"] = alkspec::cli::to_json(cfg);
    write_file(cfg.out + "_eyd.json", json_text(payload));
    write_file(cfg.out + "_eyd.csv", csv_with_config(cfg, alkspec::eyd_csv(dist, cfg.energy)));
    if (p.dim() == 2) write_file(cfg.out + "_eyd_spin.csv", csv_with_config(cfg, alkspec::eyd_spin_csv(dist)));
    return kOk;
}

int cmd_estimate(RunConfig cfg) {
    const alkspec::Spectrum p = cfg.spectrum();
    if (cfg.tau_grid == "auto") cfg.tau_grid = estimation_grid(cfg);
    const alkspec::RamseyParams params = cfg.ramsey();
    const auto model = alkspec::parse_fit_model(cfg.model);
    if (cfg.records.empty() && static_cast<int>(params.taus.size()) < p.dim()) {
        throw std::invalid_argument("need at least d distinct dark times to fit a d-dimensional spectrum");
    }

    std::vector<alkspec::MeasurementRecord> records;
    if (!cfg.records.empty()) {
        std::ifstream in(cfg.records);
        if (!in) throw std::invalid_argument("cannot open records file " + cfg.records);
        std::stringstream ss;
        ss << in.rdbuf();
        records = alkspec::parse_records_csv(ss.str(), cfg.n);
    } else if (cfg.noiseless) {
        records = alkspec::noiseless_measurements(params, p, cfg.shots, model);
    } else {
        records = alkspec::simulate_measurements(params, p, cfg.shots, cfg.seed, alkspec::parse_noise_model(cfg.noise));
        write_file(cfg.out + "_records.csv", csv_with_config(cfg, alkspec::records_csv(records)));
    }

    alkspec::FitOptions fit;
    fit.model = model;
    fit.starts = cfg.starts;
    fit.seed = cfg.seed;
    const alkspec::EstimationResult result = alkspec::fit_spectrum(records, params, p.dim(), fit);

    write_file(cfg.out + "_estimate.json", json_text({{"config", alkspec::cli::to_json(cfg)},
                                                      {"params", alkspec::to_json(params)},
                                                      {"result", alkspec::to_json(result)}}));
    std::string body = "tau,observed,fitted,residual\n";
    for (std::size_t i = 0; i < result.taus.size(); ++i) {
        body += alkspec::format_double(result.taus[i]) + "," + alkspec::format_double(result.observed[i]) + "," +
                alkspec::format_double(result.fitted[i]) + "," +
                alkspec::format_double(result.observed[i] - result.fitted[i]) + "\n";
    }
    write_file(cfg.out + "_residuals.csv", csv_with_config(cfg, body));
    std::cout << "p_hat " << result.p_hat.to_string() << (result.converged ? "" : " (not converged)") << "\n";
    if (!result.converged) throw FitNotConverged("fit did not converge; best estimate written");
    return kOk;
}

int cmd_validate(const RunConfig& cfg) {
    alkspec::AcceptanceOptions opts;
    opts.quick = cfg.quick;
    opts.seed = cfg.seed;
    json checks = json::array();
    bool all_passed = true;
    for (int id = 1; id <= alkspec::kAcceptanceCheckCount; ++id) {
        const auto r = alkspec::run_check(id, opts);
        std::cout << alkspec::format_check(r) << std::endl;
        checks.push_back(alkspec::to_json(r));
        all_passed = all_passed && r.passed;
    }
    write_file(cfg.out + "_validate.json",
               json_text({{"config", alkspec::cli::to_json(cfg)}, {"passed", all_passed}, {"checks", checks}}));
    return all_passed ? kOk : kValidationFailed;
}

int cmd_physical(const RunConfig& cfg) {
    if (cfg.atoms < 1) throw std::invalid_argument("atoms must be >= 1");
    if (!(cfg.gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    const alkspec::Couplings c = alkspec::derive_couplings(cfg.physical());
    const double two_pi = 2.0 * std::numbers::pi;
    json out = {{"config", alkspec::cli::to_json(cfg)},
                {"U_gg", c.U_gg},
                {"U_ee", c.U_ee},
                {"V", c.V},
                {"V_ex", c.V_ex},
                {"U_gg_hz", c.U_gg / two_pi},
                {"timescale_s", c.U_gg > 0.0 ? json(1.0 / (cfg.atoms * c.U_gg)) : json(nullptr)},
                {"loss_ratio", c.U_gg > 0.0 ? json(cfg.gamma / c.U_gg) : json(nullptr)}};
    std::cout << out.dump(2) << std::endl;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramsey spectroscopy of n copies of a nuclear-spin state: signals, EYD and spectrum estimation"};
    app.require_subcommand(1);
    RunConfig cfg;
    const std::string grid_help = "dark times start:step:count in seconds (auto picks a default)";

    Subcommand signal(app, "signal", "Ramsey signal <n_e>/n on a dark-time grid", cfg);
    signal.opt("--n", cfg.n, "atoms per site")
        .list("--p", cfg.p, "spectrum, comma separated")
        .opt("--beta", cfg.beta, "pulse area (rad)")
        .opt("--delta", cfg.delta, "detuning (rad/s)")
        .opt("--U", cfg.U, "ground-ground coupling (rad/s)")
        .opt("--tau-grid", cfg.tau_grid, grid_help)
        .opt("--method", cfg.method, "exact,truncated,asymptotic,meanfield,oracle or all")
        .opt("--k-sigma", cfg.k_sigma, "truncation width in standard deviations")
        .opt("--dU", cfg.dU, "oracle: spread of random pair couplings")
        .opt("--realizations", cfg.realizations, "oracle: random-coupling realizations")
        .opt("--seed", cfg.seed, "random seed")
        .opt("--tolerance", cfg.tolerance, "mean-field step-halving tolerance")
        .opt("--initial-steps", cfg.initial_steps, "mean-field initial RK4 steps (0 = automatic)")
        .opt("--out", cfg.out, "output path prefix");

    Subcommand eyd(app, "eyd", "Empirical-Young-diagram outcome distribution", cfg);
    eyd.opt("--n", cfg.n, "copies")
        .list("--p", cfg.p, "spectrum, comma separated")
        .flag("--energy", cfg.energy, "add the E/U column")
        .opt("--out", cfg.out, "output path prefix");

    Subcommand estimate(app, "estimate", "Fit the spectrum to measured or simulated Ramsey records", cfg);
    estimate.opt("--n", cfg.n, "atoms per site")
        .list("--p", cfg.p, "true spectrum when simulating; its length sets d")
        .opt("--beta", cfg.beta, "pulse area (rad)")
        .opt("--delta", cfg.delta, "detuning (rad/s)")
        .opt("--U", cfg.U, "ground-ground coupling (rad/s)")
        .opt("--tau-grid", cfg.tau_grid, grid_help)
        .opt("--seed", cfg.seed, "random seed")
        .opt("--shots", cfg.shots, "shots per dark time")
        .opt("--noise", cfg.noise, "binomial or gaussian")
        .opt("--model", cfg.model, "fit model: exact or asymptotic")
        .opt("--starts", cfg.starts, "multi-start count")
        .flag("--noiseless", cfg.noiseless, "fit noiseless model data")
        .opt("--records", cfg.records, "CSV tau,shot_index,n_e to fit instead of simulating")
        .opt("--out", cfg.out, "output path prefix");

    Subcommand validate(app, "validate", "Run the acceptance suite", cfg);
    validate.flag("--quick", cfg.quick, "small systems only")
        .opt("--seed", cfg.seed, "random seed")
        .opt("--out", cfg.out, "output path prefix");

    Subcommand physical(app, "physical", "Couplings and time scales from trap parameters", cfg);
    physical.opt("--a-gg", cfg.a_gg, "g-g scattering length (m)")
        .opt("--a-ee", cfg.a_ee, "e-e scattering length (m)")
        .opt("--a-eg-plus", cfg.a_eg_plus, "e-g scattering length a+ (m)")
        .opt("--a-eg-minus", cfg.a_eg_minus, "e-g scattering length a- (m)")
        .opt("--omega-perp", cfg.omega_perp, "transverse trap frequency (rad/s)")
        .opt("--L", cfg.L, "well length (m)")
        .opt("--gamma", cfg.gamma, "e-e loss rate (rad/s)")
        .opt("--atoms", cfg.atoms, "atom number for the 1/(nU) time scale");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (signal.app()->parsed()) return cmd_signal(signal.resolve());
        if (eyd.app()->parsed()) return cmd_eyd(eyd.resolve());
        if (estimate.app()->parsed()) return cmd_estimate(estimate.resolve());
        if (validate.app()->parsed()) return cmd_validate(validate.resolve());
        if (physical.app()->parsed()) return cmd_physical(physical.resolve());
    } catch (const FitNotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFitNotConverged;
    } catch (const alkspec::SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSizeLimit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationFailed;
    }
    return kConfigError;
}
