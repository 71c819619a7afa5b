#pragma once

#include <cstdint>
#include <vector>

#include "nlgames/game.hpp"

// Exact classical (local deterministic) maxima by exhaustive enumeration,
// plus the closed-form bound used as a cross-check.

namespace nlgames {

// One outcome bit per (party, setting), packed two bits per party:
// bit (2*party + setting) of code is that party's outcome for the setting.
struct DeterministicStrategy {
    int parties = 2;
    uint16_t code = 0;

    int outcome(int party, int setting) const {
        return (code >> (2 * party + setting)) & 1;
    }
    static int count(int parties) { return 1 << (2 * parties); }
};

// Sum of p(settings) * V(settings, strategy outcomes); exact up to rounding.
double evaluate_strategy(const GameSpec& game, const BiasVector& bias,
                         const DeterministicStrategy& strat);

struct ClassicalReport {
    double max_probability = 0.0;
    std::vector<DeterministicStrategy> argmax;  // all maximizers, by code
    BiasVector bias;
};

// Exhaustive maximum over the 4^parties deterministic strategies.
ClassicalReport classical_max(const GameSpec& game, const BiasVector& bias);

// 1 - (1-p)(1-q) for bias components in [1/2, 1] (map other quadrants in
// first; see analysis::canonicalize_bias). For three parties this is the
// branch-decoupled bound, r-independent by construction; the enumeration
// above is the operational local maximum.
double classical_max_analytic(const GameSpec& game, const BiasVector& bias);

}  // namespace nlgames
