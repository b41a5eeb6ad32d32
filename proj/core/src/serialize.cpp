#include "alkspec/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace alkspec {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json to_json(const Spectrum& p) { return p.vector(); }

nlohmann::json to_json(const YoungDiagram& lambda) { return lambda.rows(); }

nlohmann::json to_json(const EydDistribution& dist) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : dist.entries) entries.push_back({{"lambda", to_json(e.lambda)}, {"prob", e.prob}});
    return {{"n", dist.n}, {"d", dist.d}, {"entries", entries}};
}

EydDistribution eyd_distribution_from_json(const nlohmann::json& j) {
    EydDistribution dist;
    dist.n = j.at("n").get<int>();
    dist.d = j.at("d").get<int>();
    for (const auto& e : j.at("entries")) {
        dist.entries.push_back({YoungDiagram(e.at("lambda").get<std::vector<int>>()), e.at("prob").get<double>()});
    }
    return dist;
}

nlohmann::json to_json(const RamseyParams& params) {
    return {{"n", params.n}, {"beta", params.beta}, {"delta", params.delta}, {"U", params.U}, {"taus", params.taus}};
}

nlohmann::json to_json(const SignalCurve& curve) {
    nlohmann::json j = {{"method", to_string(curve.method)}, {"params", to_json(curve.params)}, {"values", curve.values}};
    if (curve.truncation) {
        const auto& t = *curve.truncation;
        j["truncation"] = {{"k_sigma", t.k_sigma},
                           {"eyd_mass", t.eyd_mass},
                           {"w_mass", t.w_mass},
                           {"diagrams_kept", t.diagrams_kept},
                           {"diagrams_total", t.diagrams_total}};
    }
    return j;
}

nlohmann::json to_json(const EstimationResult& result) {
    nlohmann::json cov = nlohmann::json::array();
    for (Eigen::Index i = 0; i < result.covariance.rows(); ++i) {
        std::vector<double> row;
        for (Eigen::Index j = 0; j < result.covariance.cols(); ++j) row.push_back(result.covariance(i, j));
        cov.push_back(row);
    }
    return {{"p_hat", to_json(result.p_hat)},
            {"residual_norm", result.residual_norm},
            {"covariance", cov},
            {"converged", result.converged},
            {"model", to_string(result.model)},
            {"starts", result.starts},
            {"seed", result.seed},
            {"taus", result.taus},
            {"observed", result.observed},
            {"fitted", result.fitted}};
}

nlohmann::json to_json(const CouplingEnsemble& ensemble) {
    return {{"dU", ensemble.dU},
            {"seed", ensemble.seed},
            {"realizations", ensemble.realizations.size()},
            {"mean", ensemble.mean},
            {"stddev", ensemble.stddev}};
}

std::string signal_csv(const SignalCurve& curve) {
    std::string out = "tau,ne_over_n\n";
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        out += format_double(curve.params.taus[i]) + "," + format_double(curve.values[i]) + "\n";
    }
    return out;
}

std::string eyd_csv(const EydDistribution& dist, bool with_energy) {
    std::string out = with_energy ? "lambda,prob,energy_over_U\n" : "lambda,prob\n";
    for (const auto& e : dist.entries) {
        out += "\"" + e.lambda.to_string() + "\"," + format_double(e.prob);
        if (with_energy) out += "," + format_double(trap_energy(e.lambda, dist.n));
        out += "\n";
    }
    return out;
}

std::string eyd_spin_csv(const EydDistribution& dist) {
    if (dist.d != 2) throw std::invalid_argument("spin marginal needs d = 2");
    std::string out = "S,prob\n";
    for (const auto& e : dist.entries) {
        out += format_double(0.5 * (e.lambda.row(1) - e.lambda.row(2))) + "," + format_double(e.prob) + "\n";
    }
    return out;
}

std::string records_csv(const std::vector<MeasurementRecord>& records) {
    std::string out = "tau,shot_index,n_e\n";
    for (const auto& r : records) {
        if (r.counts.empty()) throw std::invalid_argument("records_csv needs per-shot counts");
        for (std::size_t s = 0; s < r.counts.size(); ++s) {
            out += format_double(r.tau) + "," + std::to_string(s) + "," + std::to_string(r.counts[s]) + "\n";
        }
    }
    return out;
}

namespace {

template <class T>
T parse_field(const std::string& field, int line) {
    T value{};
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("records CSV line " + std::to_string(line) + ": cannot parse '" + field + "'");
    }
    return value;
}

}  // namespace

std::vector<MeasurementRecord> parse_records_csv(const std::string& text, int n) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    // Leading '#' lines carry provenance and are skipped.
    while (std::getline(in, line) && ++line_no && line.rfind('#', 0) == 0) {
    }
    if (!in || line.rfind("tau,shot_index,n_e", 0) != 0) {
        throw std::invalid_argument("records CSV must start with header tau,shot_index,n_e");
    }
    std::vector<double> order;
    std::map<double, std::vector<int>> counts;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (fields.size() != 3) throw std::invalid_argument("records CSV line " + std::to_string(line_no) + ": expected 3 fields");
        const double tau = parse_field<double>(fields[0], line_no);
        parse_field<long>(fields[1], line_no);
        const int ne = parse_field<int>(fields[2], line_no);
        if (!counts.contains(tau)) order.push_back(tau);
        counts[tau].push_back(ne);
    }
    std::vector<MeasurementRecord> out;
    for (double tau : order) out.push_back(MeasurementRecord::from_counts(tau, n, counts[tau]));
    return out;
}

}  // namespace alkspec
