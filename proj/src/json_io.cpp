#include "nlgames/json_io.hpp"

#include <algorithm>
#include <cmath>

namespace nlgames {

using nlohmann::ordered_json;

ordered_json game_bias_json(const GameSpec& game, const BiasVector& bias) {
    ordered_json j;
    j["game"] = game.name;
    j["p"] = bias.p();
    j["q"] = bias.q();
    if (bias.parties() == 3) j["r"] = bias.r();
    return j;
}

ordered_json classical_report_json(const GameSpec& game, const ClassicalReport& report) {
    ordered_json j;
    j["max"] = report.max_probability;
    ordered_json codes = ordered_json::array();
    for (const DeterministicStrategy& s : report.argmax) codes.push_back(s.code);
    j["strategies"] = std::move(codes);
    j["p"] = report.bias.p();
    j["q"] = report.bias.q();
    if (game.parties == 3) j["r"] = report.bias.r();
    return j;
}

ordered_json observable_json(const Observable& o) {
    ordered_json j;
    j["theta"] = std::acos(std::clamp(o.bloch[2], -1.0, 1.0));
    j["phi"] = std::atan2(o.bloch[1], o.bloch[0]);
    return j;
}

ordered_json quantum_strategy_json(const QuantumStrategy& strat) {
    ordered_json j;
    ordered_json amps = ordered_json::array();
    for (int i = 0; i < strat.state.dim(); ++i) {
        amps.push_back({strat.state.amplitude(i).real(), strat.state.amplitude(i).imag()});
    }
    j["state"] = std::move(amps);
    ordered_json parties = ordered_json::array();
    for (const auto& pair : strat.observables) {
        parties.push_back({observable_json(pair[0]), observable_json(pair[1])});
    }
    j["parties"] = std::move(parties);
    return j;
}

ordered_json behavior_box_json(const BehaviorBox& box) {
    return ordered_json(box.table());
}

}  // namespace nlgames
