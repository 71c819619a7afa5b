#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nlgames/game.hpp"
#include "nlgames/linalg.hpp"

// Quantum maxima for the biased games: closed-form piecewise bounds,
// Bell-operator construction, see-saw variational optimization as an
// independent numerical oracle, and the GHZ bipartition-model strategy.

namespace nlgames {

// +/-1-valued qubit observable n . sigma for a unit Bloch vector n.
struct Observable {
    std::array<double, 3> bloch{0.0, 0.0, 1.0};
    ComplexMatrix matrix;
};

Observable bloch_observable(double theta, double phi);
Observable observable_from_bloch(double x, double y, double z);
// In-plane shorthand: cos(angle) sigma_x + sin(angle) sigma_y.
Observable planar_observable(double angle);

struct QuantumStrategy {
    StateVector state;                                   // 4- or 8-dimensional
    std::vector<std::array<Observable, 2>> observables;  // per party, per setting
    int parties() const { return static_cast<int>(observables.size()); }
};

struct BellOperator {
    ComplexMatrix matrix;
    CoefficientTable table;
};

// Weighted sum of observable tensor products; Hermitian by construction.
BellOperator bell_operator(const CoefficientTable& table, const QuantumStrategy& strat);

// <state| bell_operator |state>, in [-1, 1].
double quantum_value(const CoefficientTable& table, const QuantumStrategy& strat);

struct SeesawOptions {
    int restarts = 20;
    int max_iterations = 500;
    double tol = 1e-12;
    uint64_t seed = 20120702;  // fixed default for reproducibility
};

struct SeesawResult {
    double value = 0.0;
    QuantumStrategy strategy;
    bool converged = false;
    int iterations = 0;  // of the winning restart
};

// Alternating best-response optimization: each party's observable follows
// the effective Bloch vector of its contracted operator (closed form), the
// state follows the top eigenvector of the current Bell operator. The
// objective is monotone non-decreasing across updates; the best restart is
// returned.
SeesawResult seesaw_optimize(const CoefficientTable& table, int parties,
                             const SeesawOptions& options = {});

struct QuantumBound {
    double value = 0.0;  // Bell value
    int region = 0;      // 1: quantum = classical, 2: quantum above classical
};

// Piecewise maximum of <CHSH(p,q)>: region 1 (p >= 1/(2q)) gives
// 1-2(1-p)(1-q), region 2 gives sqrt(2)sqrt(q^2+(1-q)^2)sqrt(p^2+(1-p)^2).
// Requires p,q in [1/2, 1].
QuantumBound analytic_quantum_max_bipartite(const BiasVector& bias);

// Same piecewise forms in (p,q), independent of r; the bipartition-model
// bound for the tripartite game. Requires p,q,r in [1/2, 1].
QuantumBound analytic_quantum_max_tripartite_bipartition(const BiasVector& bias);

// Closed-form xy-plane optimizer of <CHSH(p,q)> on the maximally entangled
// pair (|00>+|11>)/sqrt(2). Valid for p in [1/2,1], q in [0,1].
struct PlanarChshOptimum {
    double alpha0 = 0.0, alpha1 = 0.0;  // Alice angles
    double beta0 = 0.0, beta1 = 0.0;    // Bob angles
    double value = 0.0;
    int region = 0;
};
PlanarChshOptimum optimal_planar_chsh(double p, double q);

// GHZ strategy for the bipartition model. Charlie measures C0 = sigma_x or
// C1 = -sigma_y on the GHZ state, preparing (|00>+-|11>)/sqrt(2) resp.
// (|00>+-i|11>)/sqrt(2) for Alice and Bob, who play the CHSH branch when
// Charlie's setting is 0 and the CHSH' branch when it is 1. Following the
// model's accounting, Alice and Bob's observables are conditioned on the
// branch: branch 1 carries the U_B-rotated images of the CHSH(p,1-q)
// optimizers, so each branch sits at its own optimum.
struct GhzBipartitionStrategy {
    StateVector state;                          // GHZ
    std::array<Observable, 2> alice_branch0;    // branch u = 0
    std::array<Observable, 2> bob_branch0;
    std::array<Observable, 2> alice_branch1;    // branch u = 1
    std::array<Observable, 2> bob_branch1;
    std::array<Observable, 2> charlie;          // C0, C1
    BiasVector bias;
};

GhzBipartitionStrategy ghz_bipartition_strategy(const BiasVector& bias);

// r <CHSH(branch0) x C0> + (1-r) <CHSH'(branch1) x C1> on the GHZ state;
// equals analytic_quantum_max_tripartite_bipartition by construction.
double bipartition_value(const GhzBipartitionStrategy& strat);

// The CHSH(p,q) and CHSH'(p,q) operators for explicit observables.
ComplexMatrix chsh_operator(double p, double q, const std::array<Observable, 2>& alice,
                            const std::array<Observable, 2>& bob);
ComplexMatrix chsh_prime_operator(double p, double q, const std::array<Observable, 2>& alice,
                                  const std::array<Observable, 2>& bob);

// Bob's local rotation diag(1, -i) relating the two branch state families.
const ComplexMatrix& bob_branch_rotation();

struct EquivalenceReport {
    int samples = 0;
    double max_discrepancy = 0.0;
};

// Checks, on random observable sets, that <CHSH(p,q)> on (|00>+-|11>)/sqrt2
// matches <CHSH'> on (|00>+-i|11>)/sqrt2 under the mapping B0->B1, B1->-B0,
// q->1-q with Bob's qubit rotated by diag(1,-i).
EquivalenceReport verify_chsh_prime_equivalence(const BiasVector& bias, int samples,
                                                uint64_t seed = 20120702);

StateVector bell_phi_plus();
StateVector ghz_state();

}  // namespace nlgames
