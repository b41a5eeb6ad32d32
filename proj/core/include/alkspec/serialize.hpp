#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "alkspec/estimation.hpp"
#include "alkspec/eyd.hpp"
#include "alkspec/oracle.hpp"
#include "alkspec/ramsey.hpp"

namespace alkspec {

/// 17 significant digits, independent of the global locale.
std::string format_double(double x);

nlohmann::json to_json(const Spectrum& p);
nlohmann::json to_json(const YoungDiagram& lambda);
nlohmann::json to_json(const EydDistribution& dist);
nlohmann::json to_json(const RamseyParams& params);
nlohmann::json to_json(const SignalCurve& curve);
nlohmann::json to_json(const EstimationResult& result);
nlohmann::json to_json(const CouplingEnsemble& ensemble);

EydDistribution eyd_distribution_from_json(const nlohmann::json& j);

/// Header `tau,ne_over_n`.
std::string signal_csv(const SignalCurve& curve);
/// Header `lambda,prob` plus `energy_over_U` when requested.
std::string eyd_csv(const EydDistribution& dist, bool with_energy);
/// d = 2 marginal in total spin: header `S,prob`.
std::string eyd_spin_csv(const EydDistribution& dist);

/// Header `tau,shot_index,n_e`; records must carry per-shot counts.
std::string records_csv(const std::vector<MeasurementRecord>& records);
/// Inverse of records_csv; rows are grouped by dark time in file order.
std::vector<MeasurementRecord> parse_records_csv(const std::string& text, int n);

}  // namespace alkspec
