#include "nlgames/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace nlgames {

namespace {
constexpr double kPi = std::numbers::pi;

// 64-bit xorshift-style generator mapped to [0,1); avoids the
// implementation-defined std distributions so runs are reproducible
// across platforms.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_canonical(const BiasVector& bias, const char* what) {
    bool ok = bias.p() >= 0.5 && bias.q() >= 0.5;
    if (bias.parties() == 3) ok = ok && bias.r() >= 0.5;
    if (!ok) throw std::invalid_argument(std::string(what) + ": bias outside the canonical quadrant");
}
}  // namespace

Observable observable_from_bloch(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (std::abs(n - 1.0) > 1e-12) {
        throw std::invalid_argument("observable_from_bloch: Bloch vector must be unit");
    }
    Observable o;
    o.bloch = {x, y, z};
    ComplexMatrix m(2, 2);
    m.at(0, 0) = z;
    m.at(0, 1) = cplx(x, -y);
    m.at(1, 0) = cplx(x, y);
    m.at(1, 1) = -z;
    o.matrix = std::move(m);
    return o;
}

Observable bloch_observable(double theta, double phi) {
    return observable_from_bloch(std::sin(theta) * std::cos(phi),
                                 std::sin(theta) * std::sin(phi), std::cos(theta));
}

Observable planar_observable(double angle) {
    return observable_from_bloch(std::cos(angle), std::sin(angle), 0.0);
}

StateVector bell_phi_plus() {
    const double s = 1.0 / std::sqrt(2.0);
    return StateVector({cplx(s, 0), 0, 0, cplx(s, 0)});
}

StateVector ghz_state() {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<cplx> a(8, cplx(0, 0));
    a[0] = s;
    a[7] = s;
    return StateVector(std::move(a));
}

BellOperator bell_operator(const CoefficientTable& table, const QuantumStrategy& strat) {
    const int n = table.parties();
    if (strat.parties() != n) throw std::invalid_argument("bell_operator: arity mismatch");
    ComplexMatrix sum(1 << n, 1 << n);
    for (int idx = 0; idx < table.size(); ++idx) {
        const double w = table.weight(idx);
        if (w == 0.0) continue;
        ComplexMatrix term = strat.observables[0][static_cast<size_t>((idx >> (n - 1)) & 1)].matrix;
        for (int k = 1; k < n; ++k) {
            const int setting = (idx >> (n - 1 - k)) & 1;
            term = kron(term, strat.observables[static_cast<size_t>(k)][static_cast<size_t>(setting)].matrix);
        }
        term *= cplx(w, 0.0);
        sum += term;
    }
    return BellOperator{std::move(sum), table};
}

double quantum_value(const CoefficientTable& table, const QuantumStrategy& strat) {
    const BellOperator op = bell_operator(table, strat);
    if (op.matrix.rows() != strat.state.dim()) {
        throw std::invalid_argument("quantum_value: state dimension mismatch");
    }
    return expectation(strat.state, op.matrix);
}

namespace {

// Effective operator of party `party` for its setting `setting`: the 2x2
// contraction R with tr[A R] = sum over matching tuples of
// w * <psi| (... A at the party's slot ...) |psi>.
ComplexMatrix effective_operator(const CoefficientTable& table, const QuantumStrategy& strat,
                                 int party, int setting) {
    const int n = table.parties();
    const int dim = 1 << n;
    ComplexMatrix r(2, 2);
    for (int idx = 0; idx < table.size(); ++idx) {
        if (((idx >> (n - 1 - party)) & 1) != setting) continue;
        const double w = table.weight(idx);
        if (w == 0.0) continue;
        for (int bi = 0; bi < dim; ++bi) {
            const cplx ci = std::conj(strat.state.amplitude(bi));
            if (ci == cplx(0.0, 0.0)) continue;
            for (int bj = 0; bj < dim; ++bj) {
                const cplx cj = strat.state.amplitude(bj);
                if (cj == cplx(0.0, 0.0)) continue;
                cplx prod = ci * cj * w;
                for (int k = 0; k < n; ++k) {
                    if (k == party) continue;
                    const int sk = (idx >> (n - 1 - k)) & 1;
                    const int ik = (bi >> (n - 1 - k)) & 1;
                    const int jk = (bj >> (n - 1 - k)) & 1;
                    prod *= strat.observables[static_cast<size_t>(k)][static_cast<size_t>(sk)]
                                .matrix.at(ik, jk);
                }
                // R[i][j] accumulates conj(psi_I) psi_J with I_party = j, J_party = i.
                const int i_slot = (bj >> (n - 1 - party)) & 1;
                const int j_slot = (bi >> (n - 1 - party)) & 1;
                r.at(i_slot, j_slot) += prod;
            }
        }
    }
    return r;
}

QuantumStrategy random_strategy(int parties, std::mt19937_64& rng) {
    QuantumStrategy s;
    s.observables.resize(static_cast<size_t>(parties));
    for (int k = 0; k < parties; ++k) {
        for (int setting = 0; setting < 2; ++setting) {
            const double z = 1.0 - 2.0 * next_uniform(rng);
            const double theta = std::acos(std::clamp(z, -1.0, 1.0));
            const double phi = 2.0 * kPi * next_uniform(rng);
            s.observables[static_cast<size_t>(k)][static_cast<size_t>(setting)] =
                bloch_observable(theta, phi);
        }
    }
    return s;
}

}  // namespace

SeesawResult seesaw_optimize(const CoefficientTable& table, int parties,
                             const SeesawOptions& options) {
    if (parties != table.parties()) throw std::invalid_argument("seesaw_optimize: arity mismatch");
    if (options.restarts < 1 || options.tol <= 0.0) {
        throw std::invalid_argument("seesaw_optimize: restarts >= 1 and tol > 0 required");
    }

    std::mt19937_64 rng(options.seed);
    SeesawResult best;
    best.value = -2.0;

    for (int restart = 0; restart < options.restarts; ++restart) {
        QuantumStrategy strat = random_strategy(parties, rng);
        strat.state = hermitian_eig(bell_operator(table, strat).matrix).vectors.front();
        double objective = quantum_value(table, strat);
        bool converged = false;
        int it = 0;
        for (; it < options.max_iterations; ++it) {
            for (int party = 0; party < parties; ++party) {
                for (int setting = 0; setting < 2; ++setting) {
                    const ComplexMatrix r = effective_operator(table, strat, party, setting);
                    const double vx = (r.at(1, 0) + r.at(0, 1)).real();
                    const double vy = ((r.at(1, 0) - r.at(0, 1)) * cplx(0.0, -1.0)).real();
                    const double vz = (r.at(0, 0) - r.at(1, 1)).real();
                    const double norm = std::sqrt(vx * vx + vy * vy + vz * vz);
                    if (norm < 1e-14) continue;  // degenerate direction: keep previous
                    strat.observables[static_cast<size_t>(party)][static_cast<size_t>(setting)] =
                        observable_from_bloch(vx / norm, vy / norm, vz / norm);
                }
            }
            const EigenSystem es = hermitian_eig(bell_operator(table, strat).matrix);
            strat.state = es.vectors.front();
            const double next = es.values.front();
            if (next < objective - 1e-9) {
                throw std::logic_error("seesaw_optimize: objective decreased");
            }
            const double gain = next - objective;
            objective = next;
            if (gain < options.tol) {
                converged = true;
                ++it;
                break;
            }
        }
        if (objective > best.value) {
            best.value = objective;
            best.strategy = strat;
            best.converged = converged;
            best.iterations = it;
        }
    }
    return best;
}

namespace {
double region1_value(double p, double q) { return 1.0 - 2.0 * (1.0 - p) * (1.0 - q); }
double region2_value(double p, double q) {
    return std::sqrt(2.0) * std::sqrt(q * q + (1.0 - q) * (1.0 - q)) *
           std::sqrt(p * p + (1.0 - p) * (1.0 - p));
}
}  // namespace

QuantumBound analytic_quantum_max_bipartite(const BiasVector& bias) {
    if (bias.parties() != 2) throw std::invalid_argument("analytic_quantum_max_bipartite: need 2 parties");
    check_canonical(bias, "analytic_quantum_max_bipartite");
    const double p = bias.p(), q = bias.q();
    if (p >= 1.0 / (2.0 * q)) return {region1_value(p, q), 1};
    return {region2_value(p, q), 2};
}

QuantumBound analytic_quantum_max_tripartite_bipartition(const BiasVector& bias) {
    if (bias.parties() != 3) {
        throw std::invalid_argument("analytic_quantum_max_tripartite_bipartition: need 3 parties");
    }
    check_canonical(bias, "analytic_quantum_max_tripartite_bipartition");
    const double p = bias.p(), q = bias.q();
    if (p >= 1.0 / (2.0 * q)) return {region1_value(p, q), 1};
    return {region2_value(p, q), 2};
}

PlanarChshOptimum optimal_planar_chsh(double p, double q) {
    if (p < 0.5 || p > 1.0 || q < 0.0 || q > 1.0) {
        throw std::invalid_argument("optimal_planar_chsh: p in [1/2,1], q in [0,1] required");
    }
    const double bigq = q * q + (1.0 - q) * (1.0 - q);
    const double m = 2.0 * q * (1.0 - q);
    const double k = p * p + (1.0 - p) * (1.0 - p);

    PlanarChshOptimum opt;
    double c;
    if (m < 1e-15) {
        c = 1.0;
        opt.region = 1;
    } else {
        const double cstar = bigq * (2.0 * p - 1.0) / (m * k);
        if (cstar >= 1.0) {
            c = 1.0;
            opt.region = 1;
        } else {
            c = std::max(cstar, -1.0);
            opt.region = 2;
        }
    }
    const double v = std::acos(std::clamp(c, -1.0, 1.0));
    opt.beta0 = -0.5 * v;
    opt.beta1 = 0.5 * v;

    const cplx e0 = std::polar(1.0, opt.beta0);
    const cplx e1 = std::polar(1.0, opt.beta1);
    const cplx w0 = q * e0 + (1.0 - q) * e1;
    const cplx w1 = q * e0 - (1.0 - q) * e1;
    opt.alpha0 = -std::arg(w0);
    opt.alpha1 = std::abs(w1) > 1e-15 ? -std::arg(w1) : 0.0;
    opt.value = p * std::abs(w0) + (1.0 - p) * std::abs(w1);
    return opt;
}

ComplexMatrix chsh_operator(double p, double q, const std::array<Observable, 2>& alice,
                            const std::array<Observable, 2>& bob) {
    ComplexMatrix op(4, 4);
    op += cplx(p * q, 0) * kron(alice[0].matrix, bob[0].matrix);
    op += cplx(p * (1 - q), 0) * kron(alice[0].matrix, bob[1].matrix);
    op += cplx((1 - p) * q, 0) * kron(alice[1].matrix, bob[0].matrix);
    op -= cplx((1 - p) * (1 - q), 0) * kron(alice[1].matrix, bob[1].matrix);
    return op;
}

ComplexMatrix chsh_prime_operator(double p, double q, const std::array<Observable, 2>& alice,
                                  const std::array<Observable, 2>& bob) {
    ComplexMatrix op(4, 4);
    op += cplx(p * q, 0) * kron(alice[0].matrix, bob[0].matrix);
    op -= cplx(p * (1 - q), 0) * kron(alice[0].matrix, bob[1].matrix);
    op -= cplx((1 - p) * q, 0) * kron(alice[1].matrix, bob[0].matrix);
    op -= cplx((1 - p) * (1 - q), 0) * kron(alice[1].matrix, bob[1].matrix);
    return op;
}

const ComplexMatrix& bob_branch_rotation() {
    static const ComplexMatrix u = [] {
        ComplexMatrix m(2, 2);
        m.at(0, 0) = 1.0;
        m.at(1, 1) = cplx(0.0, -1.0);
        return m;
    }();
    return u;
}

namespace {
Observable conjugated_observable(const ComplexMatrix& u, const Observable& o, double sign) {
    const ComplexMatrix m = u * o.matrix * u.adjoint();
    const double x = sign * m.at(1, 0).real();
    const double y = sign * m.at(1, 0).imag();
    const double z = sign * m.at(0, 0).real();
    return observable_from_bloch(x, y, z);
}
}  // namespace

GhzBipartitionStrategy ghz_bipartition_strategy(const BiasVector& bias) {
    if (bias.parties() != 3) throw std::invalid_argument("ghz_bipartition_strategy: need 3 parties");
    check_canonical(bias, "ghz_bipartition_strategy");
    const double p = bias.p(), q = bias.q();

    const PlanarChshOptimum b0 = optimal_planar_chsh(p, q);
    const PlanarChshOptimum b1 = optimal_planar_chsh(p, 1.0 - q);

    GhzBipartitionStrategy s{ghz_state(), {}, {}, {}, {}, {}, bias};
    s.alice_branch0 = {planar_observable(b0.alpha0), planar_observable(b0.alpha1)};
    s.bob_branch0 = {planar_observable(b0.beta0), planar_observable(b0.beta1)};

    // Branch 1 realizes CHSH'(p,q) at the CHSH(p,1-q) optimum:
    // B0 <- U^dag Bstar1 U, B1 <- -U^dag Bstar0 U with U = diag(1,-i).
    const ComplexMatrix& u = bob_branch_rotation();
    const ComplexMatrix udag = u.adjoint();
    s.alice_branch1 = {planar_observable(b1.alpha0), planar_observable(b1.alpha1)};
    s.bob_branch1 = {
        conjugated_observable(udag, planar_observable(b1.beta1), 1.0),
        conjugated_observable(udag, planar_observable(b1.beta0), -1.0),
    };

    s.charlie = {observable_from_bloch(1, 0, 0), observable_from_bloch(0, -1, 0)};
    return s;
}

double bipartition_value(const GhzBipartitionStrategy& strat) {
    const double r = strat.bias.r();
    const double p = strat.bias.p(), q = strat.bias.q();
    ComplexMatrix op =
        cplx(r, 0) * kron(chsh_operator(p, q, strat.alice_branch0, strat.bob_branch0),
                          strat.charlie[0].matrix);
    op += cplx(1.0 - r, 0) *
          kron(chsh_prime_operator(p, q, strat.alice_branch1, strat.bob_branch1),
               strat.charlie[1].matrix);
    return expectation(strat.state, op);
}

EquivalenceReport verify_chsh_prime_equivalence(const BiasVector& bias, int samples,
                                                uint64_t seed) {
    if (bias.parties() != 2) {
        throw std::invalid_argument("verify_chsh_prime_equivalence: need 2 parties");
    }
    const double p = bias.p(), q = bias.q();
    std::mt19937_64 rng(seed);

    const double inv = 1.0 / std::sqrt(2.0);
    const StateVector phi_plus({cplx(inv, 0), 0, 0, cplx(inv, 0)});
    const StateVector phi_minus({cplx(inv, 0), 0, 0, cplx(-inv, 0)});
    const StateVector phi_tilde_plus({cplx(inv, 0), 0, 0, cplx(0, inv)});
    const StateVector phi_tilde_minus({cplx(inv, 0), 0, 0, cplx(0, -inv)});

    const ComplexMatrix udag = bob_branch_rotation().adjoint();

    EquivalenceReport report{samples, 0.0};
    for (int n = 0; n < samples; ++n) {
        std::array<Observable, 2> alice, bob;
        for (int setting = 0; setting < 2; ++setting) {
            const double za = 1.0 - 2.0 * next_uniform(rng);
            alice[static_cast<size_t>(setting)] =
                bloch_observable(std::acos(std::clamp(za, -1.0, 1.0)), 2.0 * kPi * next_uniform(rng));
            const double zb = 1.0 - 2.0 * next_uniform(rng);
            bob[static_cast<size_t>(setting)] =
                bloch_observable(std::acos(std::clamp(zb, -1.0, 1.0)), 2.0 * kPi * next_uniform(rng));
        }
        // Mapped Bob set: B0 -> B1, B1 -> -B0, rotated onto the tilde states.
        std::array<Observable, 2> mapped = {
            conjugated_observable(udag, bob[1], 1.0),
            conjugated_observable(udag, bob[0], -1.0),
        };
        const ComplexMatrix lhs = chsh_operator(p, q, alice, bob);
        const ComplexMatrix rhs = chsh_prime_operator(p, 1.0 - q, alice, mapped);

        const double d_plus = std::abs(expectation(phi_plus, lhs) - expectation(phi_tilde_plus, rhs));
        const double d_minus =
            std::abs(expectation(phi_minus, lhs) - expectation(phi_tilde_minus, rhs));
        report.max_discrepancy = std::max({report.max_discrepancy, d_plus, d_minus});
    }
    return report;
}

}  // namespace nlgames
