// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: alkspec_acceptance [--quick] [--only ID[,ID...]]

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "alkspec/acceptance.hpp"

int main(int argc, char** argv) {
    alkspec::AcceptanceOptions opts;
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") {
            opts.quick = true;
        } else if (arg == "--only" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            for (std::string id; std::getline(ss, id, ',');) only.insert(std::stoi(id));
        } else {
            std::cerr << "usage: " << argv[0] << " [--quick] [--only ID[,ID...]]\n";
            return 2;
        }
    }

    int failures = 0;
    for (int id = 1; id <= alkspec::kAcceptanceCheckCount; ++id) {
        if (!only.empty() && !only.contains(id)) continue;
        const auto result = alkspec::run_check(id, opts);
        std::cout << alkspec::format_check(result) << std::endl;
        if (!result.passed) ++failures;
    }
    std::cout << (failures == 0 ? "all acceptance checks passed" : std::to_string(failures) + " check(s) failed")
              << std::endl;
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
