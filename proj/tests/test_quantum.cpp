#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nlgames/classical.hpp"
#include "nlgames/quantum.hpp"

using namespace nlgames;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr double kPi = std::numbers::pi;

QuantumStrategy tsirelson_strategy() {
    QuantumStrategy s;
    s.state = bell_phi_plus();
    s.observables = {{bloch_observable(0.0, 0.0), bloch_observable(kPi / 2, 0.0)},
                     {observable_from_bloch(kInvSqrt2, 0.0, kInvSqrt2),
                      observable_from_bloch(-kInvSqrt2, 0.0, kInvSqrt2)}};
    return s;
}
}  // namespace

TEST_CASE("bloch observables hit the Pauli axes") {
    CHECK((bloch_observable(0.0, 0.0).matrix - pauli_z()).frobenius_norm() < 1e-12);
    CHECK((bloch_observable(kPi / 2, 0.0).matrix - pauli_x()).frobenius_norm() < 1e-12);
    // Charlie's second setting: -sigma_y at (theta, phi) = (pi/2, 3pi/2).
    const ComplexMatrix minus_y = cplx(-1.0, 0.0) * pauli_y();
    CHECK((bloch_observable(kPi / 2, 3 * kPi / 2).matrix - minus_y).frobenius_norm() < 1e-12);
}

TEST_CASE("observables square to the identity") {
    for (double theta : {0.1, 1.0, 2.2})
        for (double phi : {0.0, 2.0, 5.1}) {
            const Observable o = bloch_observable(theta, phi);
            CHECK((o.matrix * o.matrix - ComplexMatrix::identity(2)).frobenius_norm() < 1e-12);
            CHECK(std::abs(o.matrix.trace()) < 1e-12);
        }
    CHECK_THROWS(observable_from_bloch(0.5, 0.5, 0.5));
}

TEST_CASE("bell operator with Tsirelson settings") {
    const CoefficientTable table = coefficient_table(chsh_game(), BiasVector(0.5, 0.5));
    const QuantumStrategy strat = tsirelson_strategy();
    const BellOperator op = bell_operator(table, strat);
    CHECK(op.matrix.is_hermitian(1e-12));
    CHECK(hermitian_eig(op.matrix).values.front() == doctest::Approx(kInvSqrt2).epsilon(1e-12));
    CHECK(quantum_value(table, strat) == doctest::Approx(kInvSqrt2).epsilon(1e-12));
}

TEST_CASE("all-sigma_z observables give a diagonal operator") {
    QuantumStrategy s;
    s.state = bell_phi_plus();
    s.observables = {{bloch_observable(0, 0), bloch_observable(0, 0)},
                     {bloch_observable(0, 0), bloch_observable(0, 0)}};
    const BellOperator op = bell_operator(coefficient_table(chsh_game(), BiasVector(0.7, 0.6)), s);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(op.matrix.at(i, j)) < 1e-15);
}

TEST_CASE("product state with sigma_z everywhere scores the classical value") {
    QuantumStrategy s;
    s.state = StateVector::basis(4, 0);  // |00>
    s.observables = {{bloch_observable(0, 0), bloch_observable(0, 0)},
                     {bloch_observable(0, 0), bloch_observable(0, 0)}};
    CHECK(quantum_value(coefficient_table(chsh_game(), BiasVector(0.5, 0.5)), s) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ghz with phase-aligned planar settings reaches 1/sqrt2") {
    // Phasor-aligned settings: A0=x, A1=-y, B0=(x+y)/sqrt2, B1=(x-y)/sqrt2,
    // C0=x, C1=-y.
    QuantumStrategy s;
    s.state = ghz_state();
    s.observables = {{planar_observable(0.0), planar_observable(-kPi / 2)},
                     {planar_observable(kPi / 4), planar_observable(-kPi / 4)},
                     {planar_observable(0.0), planar_observable(-kPi / 2)}};
    CHECK(quantum_value(coefficient_table(svetlichny_game(), BiasVector(0.5, 0.5, 0.5)), s) ==
          doctest::Approx(kInvSqrt2).epsilon(1e-12));
}

TEST_CASE("analytic bipartite bound") {
    const QuantumBound unbiased = analytic_quantum_max_bipartite(BiasVector(0.5, 0.5));
    CHECK(unbiased.value == doctest::Approx(kInvSqrt2).epsilon(1e-12));
    CHECK(unbiased.region == 2);

    const QuantumBound region1 = analytic_quantum_max_bipartite(BiasVector(0.9, 0.9));
    CHECK(region1.value == doctest::Approx(0.98).epsilon(1e-12));
    CHECK(region1.region == 1);

    const QuantumBound boundary = analytic_quantum_max_bipartite(BiasVector(0.8, 0.625));
    CHECK(boundary.value == doctest::Approx(0.85).epsilon(1e-12));
    CHECK(boundary.region == 1);  // closed on the >= side

    CHECK_THROWS(analytic_quantum_max_bipartite(BiasVector(0.3, 0.8)));
}

TEST_CASE("branch continuity along p = 1/(2q)") {
    for (int i = 0; i < 100; ++i) {
        const double q = 0.5 + 0.5 * i / 99.0;
        const double p = 1.0 / (2.0 * q);
        const double r1 = 1.0 - 2.0 * (1.0 - p) * (1.0 - q);
        const double r2 = std::sqrt(2.0) * std::sqrt(q * q + (1 - q) * (1 - q)) *
                          std::sqrt(p * p + (1 - p) * (1 - p));
        REQUIRE(std::abs(r1 - r2) <= 1e-12);
    }
}

TEST_CASE("analytic tripartite bound is r-independent") {
    const QuantumBound a = analytic_quantum_max_tripartite_bipartition(BiasVector(0.6, 0.6, 0.5));
    const QuantumBound b = analytic_quantum_max_tripartite_bipartition(BiasVector(0.6, 0.6, 0.99));
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-15));
    CHECK(a.value == doctest::Approx(std::sqrt(2.0) * 0.52).epsilon(1e-12));
    CHECK(analytic_quantum_max_tripartite_bipartition(BiasVector(0.5, 0.5, 0.5)).value ==
          doctest::Approx(kInvSqrt2).epsilon(1e-12));
    const double boundary = 1.0 / std::sqrt(2.0);
    CHECK(analytic_quantum_max_tripartite_bipartition(BiasVector(boundary, boundary, boundary)).value ==
          doctest::Approx(1.0 - 2.0 * (1.0 - boundary) * (1.0 - boundary)).epsilon(1e-12));
}

TEST_CASE("planar CHSH construction achieves the analytic value on the Bell pair") {
    for (double p : {0.5, 0.6, 0.75, 0.9, 1.0})
        for (double q : {0.0, 0.2, 0.5, 0.65, 0.8, 1.0}) {
            const PlanarChshOptimum opt = optimal_planar_chsh(p, q);
            QuantumStrategy s;
            s.state = bell_phi_plus();
            s.observables = {{planar_observable(opt.alpha0), planar_observable(opt.alpha1)},
                             {planar_observable(opt.beta0), planar_observable(opt.beta1)}};
            ComplexMatrix op = chsh_operator(p, q, s.observables[0], s.observables[1]);
            const double achieved = expectation(s.state, op);
            CHECK(achieved == doctest::Approx(opt.value).epsilon(1e-12));
            if (p >= 0.5 && q >= 0.5) {
                const double analytic = analytic_quantum_max_bipartite(BiasVector(p, q)).value;
                CHECK(achieved == doctest::Approx(analytic).epsilon(1e-12));
            }
        }
}

TEST_CASE("seesaw finds the unbiased Tsirelson value") {
    SeesawOptions opts;
    opts.restarts = 8;
    const SeesawResult res =
        seesaw_optimize(coefficient_table(chsh_game(), BiasVector(0.5, 0.5)), 2, opts);
    CHECK(res.value == doctest::Approx(kInvSqrt2).epsilon(1e-6));
    CHECK(res.converged);
}

TEST_CASE("seesaw matches the region formulas") {
    SeesawOptions opts;
    opts.restarts = 12;
    const double region1 =
        seesaw_optimize(coefficient_table(chsh_game(), BiasVector(0.9, 0.9)), 2, opts).value;
    CHECK(region1 == doctest::Approx(0.98).epsilon(1e-6));
    const double region2 =
        seesaw_optimize(coefficient_table(chsh_game(), BiasVector(0.6, 0.6)), 2, opts).value;
    CHECK(region2 == doctest::Approx(std::sqrt(2.0) * 0.52).epsilon(1e-6));
}

TEST_CASE("seesaw agrees with the analytic maximum on a 20x20 canonical grid") {
    SeesawOptions opts;
    opts.restarts = 20;
    const int n = 20;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const BiasVector bias(0.5 + 0.5 * i / (n - 1), 0.5 + 0.5 * j / (n - 1));
            opts.seed = 311 + static_cast<uint64_t>(i * n + j);
            const double seesaw = seesaw_optimize(coefficient_table(chsh_game(), bias), 2, opts).value;
            REQUIRE(std::abs(seesaw - analytic_quantum_max_bipartite(bias).value) <= 1e-5);
        }
}

namespace {
// Independent oracle for arbitrary signed bipartite XOR tables: the vector
// bound max over unit x_s, y_t of sum w_st x_s.y_t reduces to a 1-d search
// over c = x_0.x_1, with Bob's best response absorbed into the norms.
double xor_vector_bound(const std::array<double, 4>& w) {
    auto value = [&](double c) {
        const double u0 = std::sqrt(std::max(0.0, w[0] * w[0] + w[2] * w[2] + 2 * w[0] * w[2] * c));
        const double u1 = std::sqrt(std::max(0.0, w[1] * w[1] + w[3] * w[3] + 2 * w[1] * w[3] * c));
        return u0 + u1;
    };
    double best = 0.0;
    const int steps = 40000;
    for (int i = 0; i <= steps; ++i) best = std::max(best, value(-1.0 + 2.0 * i / steps));
    return best;
}
}  // namespace

TEST_CASE("seesaw reaches the vector bound on random xor tables") {
    std::mt19937_64 rng(1234);
    auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    SeesawOptions opts;
    opts.restarts = 16;
    for (int trial = 0; trial < 30; ++trial) {
        std::array<double, 4> w{u(), u(), u(), u()};
        double scale = std::abs(w[0]) + std::abs(w[1]) + std::abs(w[2]) + std::abs(w[3]);
        if (scale < 0.1) continue;
        for (double& x : w) x /= scale;
        const CoefficientTable table(2, {w[0], w[1], w[2], w[3], 0, 0, 0, 0});
        opts.seed = 5000 + static_cast<uint64_t>(trial);
        const double seesaw = seesaw_optimize(table, 2, opts).value;
        const double bound = xor_vector_bound(w);
        REQUIRE(std::abs(seesaw - bound) <= 5e-6);
    }
}

TEST_CASE("seesaw also handles off-quadrant biases") {
    SeesawOptions opts;
    opts.restarts = 12;
    const double v = seesaw_optimize(coefficient_table(chsh_game(), BiasVector(0.3, 0.8)), 2, opts).value;
    // by symmetry equals the canonical (0.7, 0.8) maximum
    CHECK(v == doctest::Approx(analytic_quantum_max_bipartite(BiasVector(0.7, 0.8)).value).epsilon(1e-5));
}

TEST_CASE("ghz bipartition strategy reproduces the analytic bound") {
    for (double p : {0.5, 0.7, 0.95})
        for (double q : {0.5, 0.6, 0.9})
            for (double r : {0.5, 0.77, 1.0}) {
                const BiasVector bias(p, q, r);
                const GhzBipartitionStrategy strat = ghz_bipartition_strategy(bias);
                const double value = bipartition_value(strat);
                const double analytic = analytic_quantum_max_tripartite_bipartition(bias).value;
                REQUIRE(std::abs(value - analytic) <= 1e-9);
            }
    // Hand-checked sample values.
    CHECK(bipartition_value(ghz_bipartition_strategy(BiasVector(0.95, 0.95, 0.7))) ==
          doctest::Approx(0.995).epsilon(1e-12));
    CHECK(bipartition_value(ghz_bipartition_strategy(BiasVector(0.6, 0.6, 0.9))) ==
          doctest::Approx(std::sqrt(2.0) * 0.52).epsilon(1e-12));
}

TEST_CASE("ghz bipartition strategy uses the stated Charlie settings") {
    const GhzBipartitionStrategy strat = ghz_bipartition_strategy(BiasVector(0.7, 0.7, 0.7));
    CHECK((strat.charlie[0].matrix - pauli_x()).frobenius_norm() < 1e-12);
    CHECK((strat.charlie[1].matrix - (cplx(-1.0, 0.0) * pauli_y())).frobenius_norm() < 1e-12);
    CHECK(std::abs(strat.state.amplitude(0) - cplx(kInvSqrt2, 0)) < 1e-12);
    CHECK(std::abs(strat.state.amplitude(7) - cplx(kInvSqrt2, 0)) < 1e-12);
}

// The branch-decoupled bound caps every fixed-observable strategy; the
// see-saw meets it where one branch carries all the weight (r = 1) and
// stays strictly below it at interior r for biased settings.
TEST_CASE("tripartite seesaw sits below the bipartition bound, tight at r = 1") {
    SeesawOptions opts;
    opts.restarts = 16;
    const CoefficientTable at_r1 = coefficient_table(svetlichny_game(), BiasVector(0.8, 0.7, 1.0));
    const double v1 = seesaw_optimize(at_r1, 3, opts).value;
    CHECK(v1 == doctest::Approx(analytic_quantum_max_tripartite_bipartition(BiasVector(0.8, 0.7, 1.0)).value)
                    .epsilon(1e-5));

    const CoefficientTable interior = coefficient_table(svetlichny_game(), BiasVector(0.625, 0.625, 0.625));
    const double v2 = seesaw_optimize(interior, 3, opts).value;
    const double bound = analytic_quantum_max_tripartite_bipartition(BiasVector(0.625, 0.625, 0.625)).value;
    CHECK(v2 <= bound + 1e-6);
    CHECK(v2 < bound - 1e-3);  // documented gap
}

TEST_CASE("unbiased tripartite seesaw finds the GHZ value") {
    SeesawOptions opts;
    opts.restarts = 12;
    const double v =
        seesaw_optimize(coefficient_table(svetlichny_game(), BiasVector(0.5, 0.5, 0.5)), 3, opts).value;
    CHECK(v == doctest::Approx(kInvSqrt2).epsilon(1e-6));
}

TEST_CASE("seesaw dominates every deterministic strategy") {
    SeesawOptions opts;
    opts.restarts = 10;
    for (const BiasVector& bias : {BiasVector(0.7, 0.85), BiasVector(0.55, 0.95)}) {
        const double seesaw = seesaw_optimize(coefficient_table(chsh_game(), bias), 2, opts).value;
        const double classical = bell_from_probability(classical_max(chsh_game(), bias).max_probability);
        CHECK(seesaw >= classical - 1e-9);
    }
}

TEST_CASE("chsh-prime equivalence under the Bob mapping") {
    const EquivalenceReport quick = verify_chsh_prime_equivalence(BiasVector(0.5, 0.5), 10, 5);
    CHECK(quick.max_discrepancy <= 1e-10);
    const EquivalenceReport biased = verify_chsh_prime_equivalence(BiasVector(0.81, 0.63), 100, 11);
    CHECK(biased.samples == 100);
    CHECK(biased.max_discrepancy <= 1e-10);
}

TEST_CASE("seesaw handles degenerate weights: deterministic settings") {
    // p = q = 1 leaves a single setting tuple; the other settings carry no
    // gradient and fall back to their previous observables.
    SeesawOptions opts;
    opts.restarts = 4;
    const double v = seesaw_optimize(coefficient_table(chsh_game(), BiasVector(1.0, 1.0)), 2, opts).value;
    CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("seesaw input validation") {
    const CoefficientTable table = coefficient_table(chsh_game(), BiasVector(0.5, 0.5));
    SeesawOptions opts;
    opts.restarts = 0;
    CHECK_THROWS(seesaw_optimize(table, 2, opts));
    opts.restarts = 1;
    opts.tol = 0.0;
    CHECK_THROWS(seesaw_optimize(table, 2, opts));
    CHECK_THROWS(seesaw_optimize(table, 3, SeesawOptions{}));
}
