#pragma once

#include <vector>

#include "nlgames/classical.hpp"
#include "nlgames/game.hpp"

// Behavior boxes, no-signaling constraint checks, winning-probability
// maximization over the bipartite no-signaling polytope (dense primal
// simplex) with a vertex-enumeration cross-check, and the tripartite
// Svetlichny box.

namespace nlgames {

// Conditional probability table P(outcomes | settings), indexed
// settings-major: index = settings_index * 2^parties + outcomes_index,
// both lexicographic.
class BehaviorBox {
public:
    BehaviorBox(int parties, std::vector<double> table);

    int parties() const { return parties_; }
    const std::vector<double>& table() const { return table_; }
    double prob(std::span<const int> settings, std::span<const int> outcomes) const;

    // Throws if normalization or no-signaling is violated beyond tol.
    void validate(double tol = 1e-12) const;

    static int index(int parties, std::span<const int> settings, std::span<const int> outcomes);

private:
    int parties_;
    std::vector<double> table_;
};

BehaviorBox uniform_box(int parties);
BehaviorBox box_from_strategy(const DeterministicStrategy& strat);

// P(a,b|s,t) = 1/2 iff a^b = st ^ alpha*s ^ beta*t ^ gamma.
BehaviorBox pr_box(int alpha, int beta, int gamma);

// P(a,b,c|s,t,u) = 1/4 iff a^b^c = st^tu^us; all one- and two-party
// correlators vanish.
BehaviorBox svetlichny_box();

// Product of (-1)^outcome over the parties selected by mask, averaged over
// the box at the given settings.
double correlator(const BehaviorBox& box, std::span<const int> settings, unsigned party_mask);

// Winning probability of the box; validates the box first.
double game_value(const BehaviorBox& box, const GameSpec& game, const BiasVector& bias);

// maximize objective . x  subject to  constraints . x = rhs, x >= 0
struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> constraints;
    std::vector<double> rhs;
};

struct LpResult {
    double value = 0.0;
    std::vector<double> x;
};

// Two-phase dense primal simplex with Bland's anti-cycling rule; throws on
// infeasibility (the uniform box always satisfies our constraints, so that
// signals a constraint bug).
LpResult simplex_maximize(const LinearProgram& lp);

// The bipartite no-signaling polytope as an LP (16 variables).
LinearProgram ns_polytope_program(std::vector<double> objective);

struct NsMaximum {
    double value = 0.0;
    BehaviorBox box;
};

// LP maximum of game_value over the bipartite no-signaling polytope.
NsMaximum ns_maximize(const GameSpec& game, const BiasVector& bias);

// Maximum of the same objective over the 24 extremal boxes (16 local
// deterministic + 8 PR variants); must agree with ns_maximize to 1e-9.
double ns_vertex_oracle(const GameSpec& game, const BiasVector& bias);

// Generic linear functional over the 16-entry bipartite box table, for
// LP-vs-vertex agreement checks on arbitrary objectives.
double ns_maximize_linear(const std::vector<double>& coefficients);
double ns_vertex_linear(const std::vector<double>& coefficients);

}  // namespace nlgames
