#include "nlgames/game.hpp"

#include <cmath>
#include <stdexcept>

namespace nlgames {

namespace {
void check_arity(int parties, std::span<const int> v, const char* what) {
    if (static_cast<int>(v.size()) != parties) {
        throw std::invalid_argument(std::string(what) + ": arity mismatch");
    }
}
void check_bits(std::span<const int> v, const char* what) {
    for (int x : v) {
        if (x != 0 && x != 1) throw std::invalid_argument(std::string(what) + ": values must be bits");
    }
}
}  // namespace

int GameSpec::target_parity(std::span<const int> settings) const {
    check_arity(parties, settings, "GameSpec::target_parity");
    check_bits(settings, "GameSpec::target_parity");
    if (parties == 2) {
        return settings[0] & settings[1];
    }
    const int s = settings[0], t = settings[1], u = settings[2];
    return (s & t) ^ (t & u) ^ (u & s);
}

bool GameSpec::wins(std::span<const int> settings, std::span<const int> outcomes) const {
    check_arity(parties, outcomes, "GameSpec::wins");
    check_bits(outcomes, "GameSpec::wins");
    int parity = 0;
    for (int o : outcomes) parity ^= o;
    return parity == target_parity(settings);
}

GameSpec chsh_game() { return GameSpec{GameKind::chsh, 2, "chsh"}; }
GameSpec svetlichny_game() { return GameSpec{GameKind::svetlichny, 3, "svetlichny"}; }

int filter_v(const GameSpec& game, std::span<const int> settings, std::span<const int> outcomes) {
    return game.wins(settings, outcomes) ? 1 : 0;
}

namespace {
void check_prob(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument(std::string("BiasVector: ") + name + " must lie in [0,1]");
    }
}
}  // namespace

BiasVector::BiasVector(double p, double q) : p_(p), q_(q) {
    check_prob(p, "p");
    check_prob(q, "q");
}

BiasVector::BiasVector(double p, double q, double r) : p_(p), q_(q), r_(r) {
    check_prob(p, "p");
    check_prob(q, "q");
    check_prob(r, "r");
}

double BiasVector::r() const {
    if (!r_) throw std::logic_error("BiasVector: r requested for a two-party bias");
    return *r_;
}

double BiasVector::setting_prob(int party, int setting) const {
    if (party < 0 || party >= parties()) throw std::invalid_argument("BiasVector: bad party index");
    if (setting != 0 && setting != 1) throw std::invalid_argument("BiasVector: bad setting");
    const double p0 = party == 0 ? p_ : party == 1 ? q_ : *r_;
    return setting == 0 ? p0 : 1.0 - p0;
}

double BiasVector::joint_prob(std::span<const int> settings) const {
    check_arity(parties(), settings, "BiasVector::joint_prob");
    double w = 1.0;
    for (int k = 0; k < parties(); ++k) w *= setting_prob(k, settings[k]);
    return w;
}

CoefficientTable::CoefficientTable(int parties, std::array<double, 8> weights)
    : parties_(parties), weights_(weights) {
    if (parties != 2 && parties != 3) {
        throw std::invalid_argument("CoefficientTable: parties must be 2 or 3");
    }
}

int CoefficientTable::settings_index(std::span<const int> settings) {
    check_bits(settings, "CoefficientTable::settings_index");
    int idx = 0;
    for (int s : settings) idx = (idx << 1) | s;
    return idx;
}

double CoefficientTable::weight(std::span<const int> settings) const {
    check_arity(parties_, settings, "CoefficientTable::weight");
    return weights_[static_cast<size_t>(settings_index(settings))];
}

CoefficientTable coefficient_table(const GameSpec& game, const BiasVector& bias) {
    if (bias.parties() != game.parties) {
        throw std::invalid_argument("coefficient_table: bias arity does not match game");
    }
    std::array<double, 8> w{};
    const int count = 1 << game.parties;
    for (int idx = 0; idx < count; ++idx) {
        std::array<int, 3> settings{};
        for (int k = 0; k < game.parties; ++k) {
            settings[static_cast<size_t>(k)] = (idx >> (game.parties - 1 - k)) & 1;
        }
        std::span<const int> s(settings.data(), static_cast<size_t>(game.parties));
        const double prob = bias.joint_prob(s);
        const int sign = game.target_parity(s) == 0 ? 1 : -1;
        w[static_cast<size_t>(idx)] = sign * prob;
    }
    return CoefficientTable(game.parties, w);
}

double probability_from_bell(double bell_value) {
    if (std::abs(bell_value) > 1.0 + 1e-12) {
        throw std::invalid_argument("probability_from_bell: |bell| exceeds 1");
    }
    return 0.5 * (1.0 + bell_value);
}

double bell_from_probability(double probability) {
    if (probability < -1e-12 || probability > 1.0 + 1e-12) {
        throw std::invalid_argument("bell_from_probability: probability outside [0,1]");
    }
    return 2.0 * probability - 1.0;
}

}  // namespace nlgames
