#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace alkspec::cli {

namespace {

template <class T>
T parse_number(const std::string& field, const std::string& what) {
    T value{};
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end) throw std::invalid_argument("cannot parse " + what + " '" + field + "'");
    return value;
}

}  // namespace

TauGrid TauGrid::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("tau grid must be start:step:count, got '" + text + "'");
    TauGrid g{parse_number<double>(parts[0], "tau start"), parse_number<double>(parts[1], "tau step"),
              parse_number<int>(parts[2], "tau count")};
    if (!(g.start >= 0.0) || !std::isfinite(g.start)) throw std::invalid_argument("tau start must be >= 0");
    if (g.count < 1) throw std::invalid_argument("tau count must be >= 1");
    if (g.count > 1 && !(g.step > 0.0 && std::isfinite(g.step))) throw std::invalid_argument("tau step must be > 0");
    return g;
}

std::string TauGrid::to_string() const {
    nlohmann::json j = {start, step};
    return j[0].dump() + ":" + j[1].dump() + ":" + std::to_string(count);
}

std::vector<double> TauGrid::values() const {
    std::vector<double> taus(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) taus[static_cast<std::size_t>(i)] = start + step * i;
    return taus;
}

Spectrum RunConfig::spectrum() const {
    if (p.empty()) throw std::invalid_argument("p must have at least one entry");
    double total = 0.0;
    for (double x : p) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("p entries must lie in [0, 1]");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("p must sum to 1");
    return Spectrum::normalized(p);
}

RamseyParams RunConfig::ramsey() const {
    RamseyParams params;
    params.n = n;
    params.beta = beta;
    params.delta = delta;
    params.U = U;
    params.taus = TauGrid::parse(tau_grid == "auto" ? "0:0.01:200" : tau_grid).values();
    params.validate();
    return params;
}

PhysicalParams RunConfig::physical() const {
    return PhysicalParams{a_gg, a_ee, a_eg_plus, a_eg_minus, omega_perp, L, gamma};
}

SolverOptions RunConfig::solver() const {
    SolverOptions opts;
    opts.tolerance = tolerance;
    opts.initial_steps = initial_steps;
    return opts;
}

std::vector<std::string> RunConfig::methods() const {
    if (method == "all") return {"exact", "truncated", "asymptotic", "meanfield", "oracle"};
    std::vector<std::string> out;
    std::stringstream ss(method);
    for (std::string m; std::getline(ss, m, ',');) {
        parse_signal_method(m);
        out.push_back(m);
    }
    if (out.empty()) throw std::invalid_argument("no signal method given");
    return out;
}

nlohmann::json to_json(const RunConfig& c) {
    return {{"command", c.command},
            {"n", c.n},
            {"p", c.p},
            {"beta", c.beta},
            {"delta", c.delta},
            {"U", c.U},
            {"tau_grid", c.tau_grid},
            {"method", c.method},
            {"k_sigma", c.k_sigma},
            {"dU", c.dU},
            {"realizations", c.realizations},
            {"seed", c.seed},
            {"shots", c.shots},
            {"noise", c.noise},
            {"model", c.model},
            {"starts", c.starts},
            {"noiseless", c.noiseless},
            {"records", c.records},
            {"energy", c.energy},
            {"quick", c.quick},
            {"a_gg", c.a_gg},
            {"a_ee", c.a_ee},
            {"a_eg_plus", c.a_eg_plus},
            {"a_eg_minus", c.a_eg_minus},
            {"omega_perp", c.omega_perp},
            {"L", c.L},
            {"gamma", c.gamma},
            {"atoms", c.atoms},
            {"tolerance", c.tolerance},
            {"initial_steps", c.initial_steps},
            {"out", c.out}};
}

RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    RunConfig c;
    const nlohmann::json known = to_json(c);
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw std::invalid_argument("unknown config key '" + key + "'");
    }
    const auto get = [&](const char* key, auto& field) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(field);
        } catch (const nlohmann::json::exception&) {
            throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type");
        }
    };
    get("command", c.command);
    get("n", c.n);
    get("p", c.p);
    get("beta", c.beta);
    get("delta", c.delta);
    get("U", c.U);
    get("tau_grid", c.tau_grid);
    get("method", c.method);
    get("k_sigma", c.k_sigma);
    get("dU", c.dU);
    get("realizations", c.realizations);
    get("seed", c.seed);
    get("shots", c.shots);
    get("noise", c.noise);
    get("model", c.model);
    get("starts", c.starts);
    get("noiseless", c.noiseless);
    get("records", c.records);
    get("energy", c.energy);
    get("quick", c.quick);
    get("a_gg", c.a_gg);
    get("a_ee", c.a_ee);
    get("a_eg_plus", c.a_eg_plus);
    get("a_eg_minus", c.a_eg_minus);
    get("omega_perp", c.omega_perp);
    get("L", c.L);
    get("gamma", c.gamma);
    get("atoms", c.atoms);
    get("tolerance", c.tolerance);
    get("initial_steps", c.initial_steps);
    get("out", c.out);
    return c;
}

}  // namespace alkspec::cli
