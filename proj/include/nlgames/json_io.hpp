#pragma once

#include <json.hpp>

#include "nlgames/classical.hpp"
#include "nlgames/game.hpp"
#include "nlgames/nosignaling.hpp"
#include "nlgames/quantum.hpp"

// JSON forms of the shared value types, used by the CLI and the python
// module. Field order is fixed so emitted documents are byte-stable.

namespace nlgames {

nlohmann::ordered_json game_bias_json(const GameSpec& game, const BiasVector& bias);

// {"max": ..., "strategies": [codes...], "p": ..., "q": ...[, "r": ...]}
nlohmann::ordered_json classical_report_json(const GameSpec& game, const ClassicalReport& report);

// {"theta": ..., "phi": ...}
nlohmann::ordered_json observable_json(const Observable& o);

// {"state": [[re, im], ...], "parties": [[{theta, phi}, {theta, phi}], ...]}
nlohmann::ordered_json quantum_strategy_json(const QuantumStrategy& strat);

// Ordered probability array, lexicographic in (settings, outcomes).
nlohmann::ordered_json behavior_box_json(const BehaviorBox& box);

}  // namespace nlgames
