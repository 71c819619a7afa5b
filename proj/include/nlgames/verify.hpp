#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlgames/game.hpp"

// The invariant/property battery behind the `verify` subcommand. Each check
// is deterministic given (seed, restarts); the JSON report is byte-stable.

namespace nlgames {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    uint64_t seed = 20120702;
    int restarts = 10;
    bool thorough = false;  // acceptance-sized grids instead of quick ones
};

// Both winning-probability forms of the game value for a correlator-c box:
// direct predicate sum vs (1 + sum of weighted correlators)/2. Exposed so
// tests can feed a corrupted table and watch the identity break.
double direct_game_value_all_correlators(const GameSpec& game, const BiasVector& bias, double c);
double identity_game_value(const CoefficientTable& table, double c);

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

std::string verification_report_json(const std::vector<CheckResult>& results,
                                     const VerifyOptions& options);

}  // namespace nlgames
