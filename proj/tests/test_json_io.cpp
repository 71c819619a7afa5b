#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlgames/json_io.hpp"

using namespace nlgames;
using nlohmann::ordered_json;

TEST_CASE("game and bias serialize with the fixed keys") {
    const ordered_json j2 = game_bias_json(chsh_game(), BiasVector(0.6, 0.7));
    CHECK(j2["game"] == "chsh");
    CHECK(j2["p"] == 0.6);
    CHECK(j2["q"] == 0.7);
    CHECK(!j2.contains("r"));

    const ordered_json j3 = game_bias_json(svetlichny_game(), BiasVector(0.6, 0.7, 0.8));
    CHECK(j3["game"] == "svetlichny");
    CHECK(j3["r"] == 0.8);
}

TEST_CASE("classical report carries the max and every argmax code") {
    const GameSpec game = chsh_game();
    const BiasVector bias(0.6, 0.7);
    const ClassicalReport report = classical_max(game, bias);
    const ordered_json j = classical_report_json(game, report);
    CHECK(j["max"] == report.max_probability);
    CHECK(j["strategies"].size() == report.argmax.size());
    for (size_t k = 0; k < report.argmax.size(); ++k) {
        CHECK(j["strategies"][k] == report.argmax[k].code);
    }
    CHECK(j["p"] == 0.6);
}

TEST_CASE("quantum strategy round-trips angles and amplitudes") {
    QuantumStrategy strat;
    strat.state = bell_phi_plus();
    strat.observables = {{bloch_observable(0.3, 1.1), bloch_observable(2.0, -0.4)},
                         {bloch_observable(1.2, 0.0), bloch_observable(0.0, 0.0)}};
    const ordered_json j = quantum_strategy_json(strat);
    REQUIRE(j["state"].size() == 4);
    CHECK(j["state"][0][0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(j["state"][0][1] == 0.0);
    REQUIRE(j["parties"].size() == 2);
    CHECK(j["parties"][0][0]["theta"] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(j["parties"][0][0]["phi"] == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(j["parties"][0][1]["theta"] == doctest::Approx(2.0).epsilon(1e-12));
    // Rebuilding each observable from (theta, phi) reproduces the matrix.
    for (int party = 0; party < 2; ++party)
        for (int setting = 0; setting < 2; ++setting) {
            const ordered_json& oj = j["parties"][static_cast<size_t>(party)][static_cast<size_t>(setting)];
            const Observable rebuilt = bloch_observable(oj["theta"], oj["phi"]);
            CHECK((rebuilt.matrix -
                   strat.observables[static_cast<size_t>(party)][static_cast<size_t>(setting)].matrix)
                      .frobenius_norm() < 1e-12);
        }
}

TEST_CASE("behavior box serializes as the ordered probability table") {
    const BehaviorBox box = pr_box(0, 0, 0);
    const ordered_json j = behavior_box_json(box);
    REQUIRE(j.size() == 16);
    // settings (0,0): outcomes 00 and 11 carry 1/2
    CHECK(j[0] == 0.5);
    CHECK(j[1] == 0.0);
    CHECK(j[2] == 0.0);
    CHECK(j[3] == 0.5);
    // settings (1,1): the winning parity flips
    CHECK(j[12] == 0.0);
    CHECK(j[13] == 0.5);
}
