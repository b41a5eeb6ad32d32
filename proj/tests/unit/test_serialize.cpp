#include <gtest/gtest.h>

#include <cstdlib>

#include "alkspec/serialize.hpp"

using alkspec::Spectrum;

TEST(FormatDouble, RoundTripsExactly) {
    for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
        EXPECT_EQ(std::strtod(alkspec::format_double(x).c_str(), nullptr), x);
    }
    EXPECT_EQ(alkspec::format_double(0.5), "0.5");
}

TEST(EydJson, RoundTrip) {
    const auto dist = alkspec::eyd_distribution(7, Spectrum{0.5, 0.3, 0.2});
    const auto text = alkspec::to_json(dist).dump();
    const auto back = alkspec::eyd_distribution_from_json(nlohmann::json::parse(text));
    ASSERT_EQ(back.entries.size(), dist.entries.size());
    for (std::size_t i = 0; i < dist.entries.size(); ++i) {
        EXPECT_EQ(back.entries[i].lambda, dist.entries[i].lambda);
        EXPECT_EQ(back.entries[i].prob, dist.entries[i].prob);
    }
}

TEST(EydCsv, HeadersAndEnergyColumn) {
    const auto dist = alkspec::eyd_distribution(2, Spectrum{0.6, 0.4});
    const auto csv = alkspec::eyd_csv(dist, true);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda,prob,energy_over_U");
    EXPECT_NE(csv.find("\"(1,1)\","), std::string::npos);
    EXPECT_EQ(alkspec::eyd_spin_csv(dist).substr(0, 7), "S,prob\n");
    EXPECT_THROW(alkspec::eyd_spin_csv(alkspec::eyd_distribution(2, Spectrum{0.5, 0.3, 0.2})), std::invalid_argument);
}

TEST(SignalCsv, OneRowPerDarkTime) {
    alkspec::RamseyParams r;
    r.n = 3;
    r.beta = 1.0;
    r.U = 1.0;
    r.taus = {0.0, 0.25};
    const auto curve = alkspec::exact_signal(r, Spectrum{0.6, 0.4});
    const auto csv = alkspec::signal_csv(curve);
    EXPECT_EQ(csv.rfind("tau,ne_over_n\n0,", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    const auto j = alkspec::to_json(curve);
    EXPECT_EQ(j.at("method"), "exact");
    EXPECT_EQ(j.at("values").get<std::vector<double>>(), curve.values);
}

TEST(RecordsCsv, RoundTripSkipsComments) {
    const std::vector<alkspec::MeasurementRecord> records{
        alkspec::MeasurementRecord::from_counts(0.125, 5, {1, 2, 5}),
        alkspec::MeasurementRecord::from_counts(0.3, 5, {0, 4}),
    };
    const auto text = "# config: {}\n" + alkspec::records_csv(records) + "# trailing note\n";
    const auto back = alkspec::parse_records_csv(text, 5);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].tau, 0.125);
    EXPECT_EQ(back[0].counts, records[0].counts);
    EXPECT_EQ(back[1].counts, records[1].counts);
}

TEST(RecordsCsv, RejectsMalformedInput) {
    EXPECT_THROW(alkspec::parse_records_csv("t,s,n\n", 5), std::invalid_argument);
    EXPECT_THROW(alkspec::parse_records_csv("tau,shot_index,n_e\n0.1,0\n", 5), std::invalid_argument);
    EXPECT_THROW(alkspec::parse_records_csv("tau,shot_index,n_e\n0.1,0,x\n", 5), std::invalid_argument);
    EXPECT_THROW(alkspec::parse_records_csv("tau,shot_index,n_e\n0.1,0,9\n", 5), std::invalid_argument);
    EXPECT_THROW(alkspec::records_csv({alkspec::MeasurementRecord::from_mean(0.1, 5, 10, 2.0)}), std::invalid_argument);
}

TEST(EstimationJson, CarriesProvenance) {
    alkspec::EstimationResult result;
    result.p_hat = Spectrum{0.7, 0.3};
    result.covariance = Eigen::MatrixXd::Identity(2, 2);
    result.seed = 42;
    const auto j = alkspec::to_json(result);
    EXPECT_EQ(j.at("seed"), 42);
    EXPECT_EQ(j.at("covariance").size(), 2u);
    EXPECT_EQ(j.at("p_hat").get<std::vector<double>>(), (std::vector<double>{0.7, 0.3}));
}
