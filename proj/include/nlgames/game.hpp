#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

// Biased XOR games: the winning predicate, the product input distribution
// and the signed coefficient table every solver engine consumes.
//
// Setting tuples are ordered lexicographically as (s, t[, u]) throughout,
// including serialization; index = s*2^(parties-1) + ... + last.

namespace nlgames {

enum class GameKind { chsh, svetlichny };

struct GameSpec {
    GameKind kind = GameKind::chsh;
    int parties = 2;
    std::string name;

    // Parity the outcome XOR must hit for the given settings:
    // s*t for CHSH, st^tu^us for Svetlichny.
    int target_parity(std::span<const int> settings) const;
    bool wins(std::span<const int> settings, std::span<const int> outcomes) const;
};

GameSpec chsh_game();
GameSpec svetlichny_game();

// V(outcomes|settings): 1 if the rule is satisfied, else 0.
int filter_v(const GameSpec& game, std::span<const int> settings, std::span<const int> outcomes);

class BiasVector {
public:
    BiasVector(double p, double q);            // two parties
    BiasVector(double p, double q, double r);  // three parties

    int parties() const { return r_ ? 3 : 2; }
    double p() const { return p_; }
    double q() const { return q_; }
    double r() const;  // throws when parties() == 2
    std::optional<double> r_opt() const { return r_; }

    // P(setting = 0) is the stored component for each party.
    double setting_prob(int party, int setting) const;
    double joint_prob(std::span<const int> settings) const;

private:
    double p_ = 0.5;
    double q_ = 0.5;
    std::optional<double> r_;
};

// Signed weights per setting tuple: |weight| = p(settings), sign = +1 when
// the winning XOR for that tuple is 0 and -1 when it is 1.
class CoefficientTable {
public:
    CoefficientTable(int parties, std::array<double, 8> weights);

    int parties() const { return parties_; }
    int size() const { return 1 << parties_; }
    double weight(int index) const { return weights_[static_cast<size_t>(index)]; }
    double weight(std::span<const int> settings) const;

    static int settings_index(std::span<const int> settings);

private:
    int parties_;
    std::array<double, 8> weights_;
};

CoefficientTable coefficient_table(const GameSpec& game, const BiasVector& bias);

// P = (1 + <Bell>)/2, the bridge between Bell values and winning
// probabilities for these games. Rejects |bell| > 1 (+ tiny float slack).
double probability_from_bell(double bell_value);
double bell_from_probability(double probability);

}  // namespace nlgames
