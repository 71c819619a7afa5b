#include "nlgames/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <json.hpp>

#include "nlgames/analysis.hpp"
#include "nlgames/classical.hpp"
#include "nlgames/linalg.hpp"
#include "nlgames/nosignaling.hpp"
#include "nlgames/quantum.hpp"

namespace nlgames {

namespace {

double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CheckResult make(const std::string& name, bool pass, const std::string& detail) {
    return CheckResult{name, pass, detail};
}

std::string num(double v) { return format_float(v); }

CheckResult check_kron_algebra() {
    const ComplexMatrix a = pauli_x(), b = pauli_y(), c = pauli_z();
    const ComplexMatrix assoc_l = kron(kron(a, b), c);
    const ComplexMatrix assoc_r = kron(a, kron(b, c));
    double err = (assoc_l - assoc_r).frobenius_norm();
    const ComplexMatrix lin_l = kron(a + b, c);
    const ComplexMatrix lin_r = kron(a, c) + kron(b, c);
    err = std::max(err, (lin_l - lin_r).frobenius_norm());
    return make("linalg.kron-associative-bilinear", err <= 1e-12, "max residual " + num(err));
}

CheckResult check_expectation_identity() {
    double err = 0.0;
    err = std::max(err, std::abs(expectation(bell_phi_plus(), ComplexMatrix::identity(4)) - 1.0));
    err = std::max(err, std::abs(expectation(ghz_state(), ComplexMatrix::identity(8)) - 1.0));
    return make("linalg.expectation-of-identity", err <= 1e-12, "max deviation " + num(err));
}

CheckResult check_eig_reconstruction(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int n : {2, 4, 8}) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) {
            m.at(i, i) = cplx(2.0 * next_uniform(rng) - 1.0, 0.0);
            for (int j = i + 1; j < n; ++j) {
                const cplx v(2.0 * next_uniform(rng) - 1.0, 2.0 * next_uniform(rng) - 1.0);
                m.at(i, j) = v;
                m.at(j, i) = std::conj(v);
            }
        }
        const EigenSystem es = hermitian_eig(m);
        ComplexMatrix rebuilt(n, n);
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    rebuilt.at(i, j) += es.values[static_cast<size_t>(k)] *
                                        es.vectors[static_cast<size_t>(k)].amplitude(i) *
                                        std::conj(es.vectors[static_cast<size_t>(k)].amplitude(j));
        }
        worst = std::max(worst, (rebuilt - m).frobenius_norm());
    }
    return make("linalg.eig-reconstruction", worst <= 1e-9, "max residual " + num(worst));
}

CheckResult check_xor_filter_counts() {
    const GameSpec chsh = chsh_game();
    const GameSpec svet = svetlichny_game();
    int wins2 = 0;
    for (int s = 0; s < 4; ++s)
        for (int o = 0; o < 4; ++o) {
            const std::array<int, 2> sv{(s >> 1) & 1, s & 1}, ov{(o >> 1) & 1, o & 1};
            wins2 += filter_v(chsh, std::span<const int>(sv.data(), 2), std::span<const int>(ov.data(), 2));
        }
    int wins3 = 0;
    for (int s = 0; s < 8; ++s)
        for (int o = 0; o < 8; ++o) {
            const std::array<int, 3> sv{(s >> 2) & 1, (s >> 1) & 1, s & 1};
            const std::array<int, 3> ov{(o >> 2) & 1, (o >> 1) & 1, o & 1};
            wins3 += filter_v(svet, std::span<const int>(sv.data(), 3), std::span<const int>(ov.data(), 3));
        }
    const bool ok = wins2 == 8 && wins3 == 32;
    return make("game.xor-filter-counts", ok,
                "chsh " + std::to_string(wins2) + "/16, svetlichny " + std::to_string(wins3) + "/64");
}

CheckResult check_weight_sums(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int n = 0; n < 20; ++n) {
        const BiasVector b2(next_uniform(rng), next_uniform(rng));
        const CoefficientTable t2 = coefficient_table(chsh_game(), b2);
        double sum = 0.0;
        for (int i = 0; i < t2.size(); ++i) sum += std::abs(t2.weight(i));
        worst = std::max(worst, std::abs(sum - 1.0));
        const BiasVector b3(next_uniform(rng), next_uniform(rng), next_uniform(rng));
        const CoefficientTable t3 = coefficient_table(svetlichny_game(), b3);
        sum = 0.0;
        for (int i = 0; i < t3.size(); ++i) sum += std::abs(t3.weight(i));
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return make("game.weight-magnitudes-sum-to-one", worst <= 1e-12, "max deviation " + num(worst));
}

}  // namespace

double direct_game_value_all_correlators(const GameSpec& game, const BiasVector& bias, double c) {
    // Box with every full correlator equal to c and uniform outcomes inside
    // each parity class: P(outcomes|settings) = (1 + (-1)^parity c) / 2^n.
    const int n = game.parties;
    double value = 0.0;
    for (int s = 0; s < (1 << n); ++s) {
        std::array<int, 3> sv{};
        for (int k = 0; k < n; ++k) sv[static_cast<size_t>(k)] = (s >> (n - 1 - k)) & 1;
        const std::span<const int> settings(sv.data(), static_cast<size_t>(n));
        const double w = bias.joint_prob(settings);
        for (int o = 0; o < (1 << n); ++o) {
            std::array<int, 3> ov{};
            int parity = 0;
            for (int k = 0; k < n; ++k) {
                ov[static_cast<size_t>(k)] = (o >> (n - 1 - k)) & 1;
                parity ^= ov[static_cast<size_t>(k)];
            }
            const std::span<const int> outcomes(ov.data(), static_cast<size_t>(n));
            const double prob = (1.0 + (parity ? -c : c)) / (1 << n);
            value += w * filter_v(game, settings, outcomes) * prob;
        }
    }
    return value;
}

double identity_game_value(const CoefficientTable& table, double c) {
    double bell = 0.0;
    for (int i = 0; i < table.size(); ++i) bell += table.weight(i) * c;
    return probability_from_bell(std::clamp(bell, -1.0, 1.0));
}

namespace {

CheckResult check_eq3_eq6_identity(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int n = 0; n < 25; ++n) {
        const double c = 2.0 * next_uniform(rng) - 1.0;
        {
            const BiasVector bias(next_uniform(rng), next_uniform(rng));
            const GameSpec game = chsh_game();
            worst = std::max(worst, std::abs(direct_game_value_all_correlators(game, bias, c) -
                                             identity_game_value(coefficient_table(game, bias), c)));
        }
        {
            const BiasVector bias(next_uniform(rng), next_uniform(rng), next_uniform(rng));
            const GameSpec game = svetlichny_game();
            worst = std::max(worst, std::abs(direct_game_value_all_correlators(game, bias, c) -
                                             identity_game_value(coefficient_table(game, bias), c)));
        }
    }
    return make("game.predicate-vs-correlator-identity", worst <= 1e-12, "max gap " + num(worst));
}

CheckResult check_classical_bipartite_grid(bool thorough) {
    const int n = thorough ? 50 : 25;
    const GameSpec game = chsh_game();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double p = 0.5 + 0.5 * i / (n - 1);
            const double q = 0.5 + 0.5 * j / (n - 1);
            const BiasVector bias(p, q);
            worst = std::max(worst, std::abs(classical_max(game, bias).max_probability -
                                             classical_max_analytic(game, bias)));
        }
    return make("classical.bipartite-enumeration-vs-closed-form", worst <= 1e-12,
                std::to_string(n) + "x" + std::to_string(n) + " grid, max gap " + num(worst));
}

CheckResult check_classical_symmetry() {
    const GameSpec game = chsh_game();
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            const double p = i / 10.0, q = j / 10.0;
            const double base = classical_max(game, BiasVector(p, q)).max_probability;
            worst = std::max(worst, std::abs(base - classical_max(game, BiasVector(1 - p, q)).max_probability));
            worst = std::max(worst, std::abs(base - classical_max(game, BiasVector(p, 1 - q)).max_probability));
        }
    return make("classical.relabel-symmetry", worst <= 1e-12, "max gap " + num(worst));
}

CheckResult check_classical_lightest_tuple(std::mt19937_64& rng) {
    // A deterministic strategy can always dodge every setting tuple but the
    // lightest one, so the maximum is at least 1 - min weight.
    bool ok = true;
    double margin = 1.0;
    for (int n = 0; n < 30; ++n) {
        const BiasVector bias(next_uniform(rng), next_uniform(rng));
        const CoefficientTable table = coefficient_table(chsh_game(), bias);
        double lightest = 1.0;
        for (int i = 0; i < table.size(); ++i) lightest = std::min(lightest, std::abs(table.weight(i)));
        const double max = classical_max(chsh_game(), bias).max_probability;
        ok = ok && max >= 1.0 - lightest - 1e-12;
        margin = std::min(margin, max - (1.0 - lightest));
    }
    return make("classical.wins-all-but-lightest-tuple", ok, "min margin " + num(margin));
}

CheckResult check_classical_tripartite_bound() {
    // For three parties the closed form is a branch-decoupled bound: the
    // enumeration can sit strictly below it and is r-dependent. Attained
    // exactly on the r in {0,1} slices and at q = 1/2.
    const GameSpec game = svetlichny_game();
    bool ok = true;
    double worst_over = 0.0;
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j)
            for (int k = 0; k <= 6; ++k) {
                const BiasVector bias(0.5 + i / 12.0, 0.5 + j / 12.0, 0.5 + k / 12.0);
                const double enumerated = classical_max(game, bias).max_probability;
                const double bound = classical_max_analytic(game, bias);
                worst_over = std::max(worst_over, enumerated - bound);
                ok = ok && enumerated <= bound + 1e-12;
            }
    for (double x : {0.55, 0.7, 0.85, 1.0}) {
        const double at_r1 = classical_max(game, BiasVector(x, x, 1.0)).max_probability;
        ok = ok && std::abs(at_r1 - classical_max_analytic(game, BiasVector(x, x, 1.0))) <= 1e-12;
    }
    for (double r : {0.5, 0.8}) {
        const double unbiased = classical_max(game, BiasVector(0.5, 0.5, r)).max_probability;
        ok = ok && std::abs(unbiased - 0.75) <= 1e-12;
    }
    // Documented gap: the bound is not attained at interior r for biased p,q.
    const double gap = classical_max_analytic(game, BiasVector(0.9, 0.9, 0.5)) -
                       classical_max(game, BiasVector(0.9, 0.9, 0.5)).max_probability;
    ok = ok && gap > 0.05;
    return make("classical.tripartite-closed-form-is-upper-bound", ok,
                "max excess " + num(worst_over) + ", gap at (0.9,0.9,0.5) " + num(gap));
}

CheckResult check_boundary_continuity() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double q = 0.5 + 0.5 * i / 99.0;
        const double p = 1.0 / (2.0 * q);
        const double r1 = 1.0 - 2.0 * (1.0 - p) * (1.0 - q);
        const double r2 = std::sqrt(2.0) * std::sqrt(q * q + (1 - q) * (1 - q)) *
                          std::sqrt(p * p + (1 - p) * (1 - p));
        worst = std::max(worst, std::abs(r1 - r2));
    }
    return make("quantum.region-boundary-continuity", worst <= 1e-12, "max branch gap " + num(worst));
}

CheckResult check_seesaw_bipartite(const VerifyOptions& options) {
    const GameSpec game = chsh_game();
    SeesawOptions so;
    so.restarts = options.restarts;
    so.seed = options.seed;
    const int n = options.thorough ? 8 : 4;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double p = 0.5 + 0.5 * i / (n - 1);
            const double q = 0.5 + 0.5 * j / (n - 1);
            const BiasVector bias(p, q);
            const double analytic = analytic_quantum_max_bipartite(bias).value;
            const double seesaw = seesaw_optimize(coefficient_table(game, bias), 2, so).value;
            worst = std::max(worst, std::abs(seesaw - analytic));
        }
    return make("quantum.seesaw-matches-analytic-bipartite", worst <= 1e-5, "max gap " + num(worst));
}

CheckResult check_region1_collapse(const VerifyOptions& options) {
    const GameSpec game = chsh_game();
    SeesawOptions so;
    so.restarts = options.restarts;
    so.seed = options.seed;
    double worst = 0.0;
    for (const auto& [p, q] : std::array<std::array<double, 2>, 4>{{{0.9, 0.9}, {0.8, 0.7}, {0.95, 0.6}, {1.0, 0.8}}}) {
        const BiasVector bias(p, q);
        const double seesaw = seesaw_optimize(coefficient_table(game, bias), 2, so).value;
        const double classical = bell_from_probability(classical_max(game, bias).max_probability);
        worst = std::max(worst, std::abs(seesaw - classical));
    }
    return make("quantum.region1-no-advantage", worst <= 1e-5, "max gap " + num(worst));
}

CheckResult check_dominance(const VerifyOptions& options) {
    const GameSpec game = chsh_game();
    SeesawOptions so;
    so.restarts = options.restarts;
    so.seed = options.seed;
    double worst = 1.0;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) {
            const double p = 0.5 + 0.125 * i, q = 0.5 + 0.125 * j;
            const BiasVector bias(p, q);
            const double classical = classical_max(game, bias).max_probability;
            const double quantum =
                probability_from_bell(std::min(1.0, seesaw_optimize(coefficient_table(game, bias), 2, so).value));
            const double ns = ns_maximize(game, bias).value;
            worst = std::min({worst, quantum - classical, ns - quantum});
        }
    return make("ordering.classical<=quantum<=nosignaling", worst >= -1e-9, "min gap " + num(worst));
}

CheckResult check_chsh_prime_equivalence(const VerifyOptions& options, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int n = 0; n < 4; ++n) {
        const BiasVector bias(next_uniform(rng), next_uniform(rng));
        worst = std::max(worst, verify_chsh_prime_equivalence(bias, 25, options.seed + n).max_discrepancy);
    }
    return make("quantum.chsh-prime-unitary-equivalence", worst <= 1e-10, "max discrepancy " + num(worst));
}

CheckResult check_bipartition_consistency(bool thorough) {
    const int n = thorough ? 5 : 3;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const BiasVector bias(0.5 + 0.5 * i / (n - 1), 0.5 + 0.5 * j / (n - 1),
                                      0.5 + 0.5 * k / (n - 1));
                const double value = bipartition_value(ghz_bipartition_strategy(bias));
                const double analytic = analytic_quantum_max_tripartite_bipartition(bias).value;
                worst = std::max(worst, std::abs(value - analytic));
            }
    return make("quantum.ghz-bipartition-achieves-analytic", worst <= 1e-9,
                std::to_string(n) + "^3 grid, max gap " + num(worst));
}

CheckResult check_tripartite_seesaw_vs_bound(const VerifyOptions& options) {
    // The branch-decoupled closed form upper-bounds every fixed strategy;
    // it is attained on the r = 1 slice but not at interior r for biased
    // (p,q), where the see-saw plateaus strictly below it.
    const GameSpec game = svetlichny_game();
    SeesawOptions so;
    so.restarts = std::max(options.restarts, 12);
    so.seed = options.seed;
    bool ok = true;
    double max_excess = -1.0;
    for (const auto& [p, q, r] : std::array<std::array<double, 3>, 4>{
             {{0.5, 0.5, 0.5}, {0.75, 0.625, 0.875}, {0.625, 0.75, 0.5}, {0.9, 0.8, 0.7}}}) {
        const BiasVector bias(p, q, r);
        const double seesaw = seesaw_optimize(coefficient_table(game, bias), 3, so).value;
        const double bound = analytic_quantum_max_tripartite_bipartition(bias).value;
        max_excess = std::max(max_excess, seesaw - bound);
        ok = ok && seesaw <= bound + 1e-6;
    }
    const double at_r1 =
        seesaw_optimize(coefficient_table(game, BiasVector(0.8, 0.7, 1.0)), 3, so).value;
    const double bound_r1 = analytic_quantum_max_tripartite_bipartition(BiasVector(0.8, 0.7, 1.0)).value;
    ok = ok && std::abs(at_r1 - bound_r1) <= 1e-5;
    return make("quantum.tripartite-seesaw-below-branch-bound", ok,
                "max excess " + num(max_excess) + ", r=1 slice gap " + num(std::abs(at_r1 - bound_r1)));
}

CheckResult check_ns_boxes() {
    bool ok = true;
    std::string why;
    try {
        svetlichny_box().validate(1e-12);
        for (int v = 0; v < 8; ++v) pr_box((v >> 2) & 1, (v >> 1) & 1, v & 1).validate(1e-12);
        const BiasVector bias(0.7, 0.6);
        ok = ok && std::abs(game_value(pr_box(0, 0, 0), chsh_game(), bias) - 1.0) <= 1e-12;
        ok = ok && std::abs(game_value(pr_box(0, 0, 1), chsh_game(), bias) - 0.0) <= 1e-12;
        ok = ok && std::abs(game_value(uniform_box(2), chsh_game(), bias) - 0.5) <= 1e-12;
        ok = ok && std::abs(game_value(svetlichny_box(), svetlichny_game(), BiasVector(0.6, 0.7, 0.8)) - 1.0) <= 1e-12;
    } catch (const std::exception& e) {
        ok = false;
        why = e.what();
    }
    return make("nosignaling.box-constraints-and-values", ok, why.empty() ? "all boxes valid" : why);
}

CheckResult check_svetlichny_correlators() {
    const BehaviorBox box = svetlichny_box();
    double low_order = 0.0;
    double full_err = 0.0;
    for (int s = 0; s < 8; ++s) {
        const std::array<int, 3> sv{(s >> 2) & 1, (s >> 1) & 1, s & 1};
        const std::span<const int> settings(sv.data(), 3);
        for (unsigned mask = 1; mask < 7; ++mask) {
            low_order = std::max(low_order, std::abs(correlator(box, settings, mask)));
        }
        const int parity = (sv[0] & sv[1]) ^ (sv[1] & sv[2]) ^ (sv[2] & sv[0]);
        full_err = std::max(full_err,
                            std::abs(correlator(box, settings, 7u) - (parity ? -1.0 : 1.0)));
    }
    const bool ok = low_order <= 1e-15 && full_err <= 1e-15;
    return make("nosignaling.svetlichny-box-correlators", ok,
                "1&2-party max " + num(low_order) + ", 3-party pattern error " + num(full_err));
}

CheckResult check_lp_vs_vertex(const VerifyOptions& options, std::mt19937_64& rng) {
    double worst = 0.0;
    for (const auto& [p, q] :
         std::array<std::array<double, 2>, 3>{{{0.5, 0.5}, {0.8, 0.65}, {0.3, 0.9}}}) {
        const BiasVector bias(p, q);
        worst = std::max(worst, std::abs(ns_maximize(chsh_game(), bias).value -
                                         ns_vertex_oracle(chsh_game(), bias)));
    }
    const int trials = options.thorough ? 100 : 40;
    for (int n = 0; n < trials; ++n) {
        // Random XOR-weighted objective: a signed weight per setting pair,
        // paid on the outcome-parity class it selects.
        std::vector<double> coeffs(16, 0.0);
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) {
                const double w = 2.0 * next_uniform(rng) - 1.0;
                const int target = next_uniform(rng) < 0.5 ? 0 : 1;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        if ((a ^ b) == target)
                            coeffs[static_cast<size_t>(((s << 1) | t) * 4 + ((a << 1) | b))] = w;
            }
        worst = std::max(worst, std::abs(ns_maximize_linear(coeffs) - ns_vertex_linear(coeffs)));
    }
    return make("nosignaling.lp-matches-vertex-oracle", worst <= 1e-9, "max gap " + num(worst));
}

CheckResult check_classification_invariance() {
    const GameSpec game = chsh_game();
    AnalysisOptions opts;
    opts.with_seesaw = false;
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) {
            const double p = i / 8.0, q = j / 8.0;
            const RegionPoint a = classify_point(game, BiasVector(p, q), opts);
            const RegionPoint b = classify_point(game, BiasVector(1 - p, 1 - q), opts);
            ok = ok && a.classification == b.classification;
            worst = std::max({worst, std::abs(a.classical - b.classical),
                              std::abs(a.quantum_analytic - b.quantum_analytic)});
        }
    return make("analysis.classification-canonicalization-invariance", ok && worst <= 1e-12,
                "max value gap " + num(worst));
}

CheckResult check_diagonal_threshold() {
    const double b2 = threshold_on_diagonal(chsh_game(), 1e-7);
    const double b3 = threshold_on_diagonal(svetlichny_game(), 1e-7);
    const double target = 1.0 / std::sqrt(2.0);
    const double err = std::max(std::abs(b2 - target), std::abs(b3 - target));
    return make("analysis.diagonal-threshold-at-inverse-sqrt2", err <= 1e-6,
                "bipartite " + num(b2) + ", tripartite " + num(b3));
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::vector<CheckResult> results;
    results.push_back(check_kron_algebra());
    results.push_back(check_expectation_identity());
    results.push_back(check_eig_reconstruction(rng));
    results.push_back(check_xor_filter_counts());
    results.push_back(check_weight_sums(rng));
    results.push_back(check_eq3_eq6_identity(rng));
    results.push_back(check_classical_bipartite_grid(options.thorough));
    results.push_back(check_classical_symmetry());
    results.push_back(check_classical_lightest_tuple(rng));
    results.push_back(check_classical_tripartite_bound());
    results.push_back(check_boundary_continuity());
    results.push_back(check_seesaw_bipartite(options));
    results.push_back(check_region1_collapse(options));
    results.push_back(check_dominance(options));
    results.push_back(check_chsh_prime_equivalence(options, rng));
    results.push_back(check_bipartition_consistency(options.thorough));
    results.push_back(check_tripartite_seesaw_vs_bound(options));
    results.push_back(check_ns_boxes());
    results.push_back(check_svetlichny_correlators());
    results.push_back(check_lp_vs_vertex(options, rng));
    results.push_back(check_classification_invariance());
    results.push_back(check_diagonal_threshold());
    return results;
}

std::string verification_report_json(const std::vector<CheckResult>& results,
                                     const VerifyOptions& options) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["seed"] = options.seed;
    doc["restarts"] = options.restarts;
    doc["thorough"] = options.thorough;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    bool all = true;
    for (const CheckResult& r : results) {
        checks.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
    }
    doc["checks"] = std::move(checks);
    doc["all_pass"] = all;
    return doc.dump(2) + "\n";
}

}  // namespace nlgames
