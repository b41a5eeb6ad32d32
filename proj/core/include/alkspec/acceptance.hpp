#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace alkspec {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double max_error = 0.0;
    double tolerance = 0.0;
    double runtime_s = 0.0;
    double runtime_limit_s = 0.0;
    std::string detail;
};

struct AcceptanceOptions {
    /// Restrict to small systems (n <= 4) where a check allows it.
    bool quick = false;
    std::uint64_t seed = 20240601;
};

inline constexpr int kAcceptanceCheckCount = 12;

/// Runs check `id` (1..12). Exceptions inside a check become a failed result.
CheckResult run_check(int id, const AcceptanceOptions& opts = {});
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opts = {});

/// One line: "PASS  3 permutation-trace  max_error=... tol=... runtime=...s".
std::string format_check(const CheckResult& r);
nlohmann::json to_json(const CheckResult& r);

}  // namespace alkspec
