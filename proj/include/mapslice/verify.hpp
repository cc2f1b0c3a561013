#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mapslice {

struct VerifyConfig {
    int trials = 20;
    std::uint64_t seed = 1;
    std::vector<int> nus = {2, 3};
    double magnitude = 0.15;
};

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Re-derives the oracle-backed properties on randomized maps; one result per
// property. Backs the `verify` subcommand.
std::vector<PropertyResult> run_verification(const VerifyConfig& cfg);

}  // namespace mapslice
