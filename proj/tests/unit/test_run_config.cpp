#include <gtest/gtest.h>

#include "run_config.hpp"

using alkspec::cli::RunConfig;
using alkspec::cli::TauGrid;

TEST(TauGrid, ParseAndValues) {
    const auto g = TauGrid::parse("0.5:0.25:3");
    EXPECT_EQ(g.values(), (std::vector<double>{0.5, 0.75, 1.0}));
    EXPECT_EQ(TauGrid::parse(g.to_string()).count, 3);
    EXPECT_THROW(TauGrid::parse("0:1"), std::invalid_argument);
    EXPECT_THROW(TauGrid::parse("0:x:3"), std::invalid_argument);
    EXPECT_THROW(TauGrid::parse("0:0.1:0"), std::invalid_argument);
}

TEST(RunConfig, JsonRoundTrip) {
    RunConfig c;
    c.command = "signal";
    c.n = 17;
    c.p = {0.5, 0.5};
    c.tau_grid = "0:0.1:5";
    c.seed = 99;
    c.noiseless = true;
    const auto back = alkspec::cli::config_from_json(alkspec::cli::to_json(c));
    EXPECT_EQ(alkspec::cli::to_json(back), alkspec::cli::to_json(c));
    EXPECT_EQ(back.ramsey().taus.size(), 5u);
}

TEST(RunConfig, RejectsUnknownKeysAndBadTypes) {
    EXPECT_THROW(alkspec::cli::config_from_json({{"bogus", 1}}), std::invalid_argument);
    EXPECT_THROW(alkspec::cli::config_from_json({{"n", "ten"}}), std::invalid_argument);
    EXPECT_THROW(alkspec::cli::config_from_json(nlohmann::json::array()), std::invalid_argument);
    EXPECT_EQ(alkspec::cli::config_from_json({{"n", 4}}).n, 4);
}

TEST(RunConfig, SpectrumIsSortedAndChecked) {
    RunConfig c;
    c.p = {0.2, 0.8};
    EXPECT_EQ(c.spectrum(), (alkspec::Spectrum{0.8, 0.2}));
    c.p = {0.2, 0.7};
    EXPECT_THROW(c.spectrum(), std::invalid_argument);
}

TEST(RunConfig, MethodsExpandAll) {
    RunConfig c;
    c.method = "all";
    EXPECT_EQ(c.methods().size(), 5u);
    c.method = "exact,asymptotic";
    EXPECT_EQ(c.methods(), (std::vector<std::string>{"exact", "asymptotic"}));
    c.method = "exact,nope";
    EXPECT_THROW(c.methods(), std::invalid_argument);
}
