#include "nlgames/nosignaling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace nlgames {

namespace {
void decode_bits(int value, int n, std::array<int, 3>& out) {
    for (int k = 0; k < n; ++k) out[static_cast<size_t>(k)] = (value >> (n - 1 - k)) & 1;
}
}  // namespace

BehaviorBox::BehaviorBox(int parties, std::vector<double> table)
    : parties_(parties), table_(std::move(table)) {
    if (parties != 2 && parties != 3) {
        throw std::invalid_argument("BehaviorBox: parties must be 2 or 3");
    }
    const size_t expected = static_cast<size_t>(1) << (2 * parties);
    if (table_.size() != expected) {
        throw std::invalid_argument("BehaviorBox: wrong table size");
    }
}

int BehaviorBox::index(int parties, std::span<const int> settings, std::span<const int> outcomes) {
    if (static_cast<int>(settings.size()) != parties || static_cast<int>(outcomes.size()) != parties) {
        throw std::invalid_argument("BehaviorBox::index: arity mismatch");
    }
    int s = 0, o = 0;
    for (int k = 0; k < parties; ++k) {
        s = (s << 1) | settings[static_cast<size_t>(k)];
        o = (o << 1) | outcomes[static_cast<size_t>(k)];
    }
    return s * (1 << parties) + o;
}

double BehaviorBox::prob(std::span<const int> settings, std::span<const int> outcomes) const {
    return table_[static_cast<size_t>(index(parties_, settings, outcomes))];
}

void BehaviorBox::validate(double tol) const {
    const int n = parties_;
    const int m = 1 << n;
    for (double v : table_) {
        if (v < -tol) throw std::runtime_error("BehaviorBox: negative probability");
    }
    for (int s = 0; s < m; ++s) {
        double sum = 0.0;
        for (int o = 0; o < m; ++o) sum += table_[static_cast<size_t>(s * m + o)];
        if (std::abs(sum - 1.0) > tol) {
            throw std::runtime_error("BehaviorBox: normalization violated");
        }
    }
    // Party k's setting must be invisible to the joint marginal of the rest.
    for (int k = 0; k < n; ++k) {
        for (int srest = 0; srest < (1 << (n - 1)); ++srest) {
            for (int orest = 0; orest < (1 << (n - 1)); ++orest) {
                double marg[2] = {0.0, 0.0};
                for (int sk = 0; sk < 2; ++sk) {
                    std::array<int, 3> settings{}, outcomes{};
                    int bit = 0;
                    for (int j = 0; j < n; ++j) {
                        if (j == k) {
                            settings[static_cast<size_t>(j)] = sk;
                        } else {
                            settings[static_cast<size_t>(j)] = (srest >> (n - 2 - bit)) & 1;
                            ++bit;
                        }
                    }
                    for (int ok = 0; ok < 2; ++ok) {
                        bit = 0;
                        for (int j = 0; j < n; ++j) {
                            if (j == k) {
                                outcomes[static_cast<size_t>(j)] = ok;
                            } else {
                                outcomes[static_cast<size_t>(j)] = (orest >> (n - 2 - bit)) & 1;
                                ++bit;
                            }
                        }
                        marg[sk] += table_[static_cast<size_t>(index(
                            n, std::span<const int>(settings.data(), static_cast<size_t>(n)),
                            std::span<const int>(outcomes.data(), static_cast<size_t>(n))))];
                    }
                }
                if (std::abs(marg[0] - marg[1]) > tol) {
                    throw std::runtime_error("BehaviorBox: no-signaling violated");
                }
            }
        }
    }
}

BehaviorBox uniform_box(int parties) {
    const int m = 1 << parties;
    return BehaviorBox(parties, std::vector<double>(static_cast<size_t>(m) * m, 1.0 / m));
}

BehaviorBox box_from_strategy(const DeterministicStrategy& strat) {
    const int n = strat.parties;
    const int m = 1 << n;
    std::vector<double> table(static_cast<size_t>(m) * m, 0.0);
    for (int s = 0; s < m; ++s) {
        int o = 0;
        for (int k = 0; k < n; ++k) {
            const int sk = (s >> (n - 1 - k)) & 1;
            o = (o << 1) | strat.outcome(k, sk);
        }
        table[static_cast<size_t>(s * m + o)] = 1.0;
    }
    return BehaviorBox(n, std::move(table));
}

BehaviorBox pr_box(int alpha, int beta, int gamma) {
    std::vector<double> table(16, 0.0);
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const int target = (s & t) ^ (alpha & s) ^ (beta & t) ^ gamma;
                    if ((a ^ b) == target) {
                        table[static_cast<size_t>(((s << 1) | t) * 4 + ((a << 1) | b))] = 0.5;
                    }
                }
    return BehaviorBox(2, std::move(table));
}

BehaviorBox svetlichny_box() {
    std::vector<double> table(64, 0.0);
    for (int s = 0; s < 8; ++s) {
        std::array<int, 3> st{};
        decode_bits(s, 3, st);
        const int target = (st[0] & st[1]) ^ (st[1] & st[2]) ^ (st[2] & st[0]);
        for (int o = 0; o < 8; ++o) {
            std::array<int, 3> ot{};
            decode_bits(o, 3, ot);
            if ((ot[0] ^ ot[1] ^ ot[2]) == target) {
                table[static_cast<size_t>(s * 8 + o)] = 0.25;
            }
        }
    }
    return BehaviorBox(3, std::move(table));
}

double correlator(const BehaviorBox& box, std::span<const int> settings, unsigned party_mask) {
    const int n = box.parties();
    const int m = 1 << n;
    double acc = 0.0;
    for (int o = 0; o < m; ++o) {
        std::array<int, 3> outcomes{};
        decode_bits(o, n, outcomes);
        int parity = 0;
        for (int k = 0; k < n; ++k) {
            if (party_mask & (1u << k)) parity ^= outcomes[static_cast<size_t>(k)];
        }
        const double sign = parity ? -1.0 : 1.0;
        acc += sign * box.prob(settings, std::span<const int>(outcomes.data(), static_cast<size_t>(n)));
    }
    return acc;
}

double game_value(const BehaviorBox& box, const GameSpec& game, const BiasVector& bias) {
    if (box.parties() != game.parties || bias.parties() != game.parties) {
        throw std::invalid_argument("game_value: arity mismatch");
    }
    box.validate(1e-9);
    const int n = game.parties;
    const int m = 1 << n;
    double value = 0.0;
    for (int s = 0; s < m; ++s) {
        std::array<int, 3> settings{};
        decode_bits(s, n, settings);
        const std::span<const int> sv(settings.data(), static_cast<size_t>(n));
        const double w = bias.joint_prob(sv);
        for (int o = 0; o < m; ++o) {
            std::array<int, 3> outcomes{};
            decode_bits(o, n, outcomes);
            const std::span<const int> ov(outcomes.data(), static_cast<size_t>(n));
            if (game.wins(sv, ov)) value += w * box.prob(sv, ov);
        }
    }
    return value;
}

namespace {
constexpr double kPivotTol = 1e-10;

// Bland's rule pivoting on a tableau whose last row is the reduced-cost row
// (last column: objective value, negated) and last column the rhs.
void pivot(std::vector<std::vector<double>>& t, std::vector<int>& basis, int row, int col) {
    const size_t ncols = t[0].size();
    const double piv = t[static_cast<size_t>(row)][static_cast<size_t>(col)];
    for (size_t j = 0; j < ncols; ++j) t[static_cast<size_t>(row)][j] /= piv;
    for (size_t i = 0; i < t.size(); ++i) {
        if (static_cast<int>(i) == row) continue;
        const double f = t[i][static_cast<size_t>(col)];
        if (f == 0.0) continue;
        for (size_t j = 0; j < ncols; ++j) t[i][j] -= f * t[static_cast<size_t>(row)][j];
    }
    basis[static_cast<size_t>(row)] = col;
}

// Runs Bland-rule simplex until the reduced-cost row has no entry > tol
// among allowed columns. Returns false on unboundedness.
bool run_simplex(std::vector<std::vector<double>>& t, std::vector<int>& basis, int allowed_cols) {
    const int m = static_cast<int>(t.size()) - 1;
    const int rhs = static_cast<int>(t[0].size()) - 1;
    for (;;) {
        int enter = -1;
        for (int j = 0; j < allowed_cols; ++j) {
            if (t[static_cast<size_t>(m)][static_cast<size_t>(j)] > kPivotTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return true;
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            const double a = t[static_cast<size_t>(i)][static_cast<size_t>(enter)];
            if (a > kPivotTol) {
                const double ratio = t[static_cast<size_t>(i)][static_cast<size_t>(rhs)] / a;
                if (leave < 0 || ratio < best_ratio - kPivotTol ||
                    (std::abs(ratio - best_ratio) <= kPivotTol &&
                     basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) return false;
        pivot(t, basis, leave, enter);
    }
}
}  // namespace

LpResult simplex_maximize(const LinearProgram& lp) {
    const int n = static_cast<int>(lp.objective.size());
    const int m = static_cast<int>(lp.constraints.size());
    if (static_cast<int>(lp.rhs.size()) != m) {
        throw std::invalid_argument("simplex_maximize: rhs size mismatch");
    }

    // Tableau: columns [x (n) | artificials (m) | rhs], rows [constraints | cost].
    std::vector<std::vector<double>> t(static_cast<size_t>(m) + 1,
                                       std::vector<double>(static_cast<size_t>(n + m + 1), 0.0));
    std::vector<int> basis(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double sign = lp.rhs[static_cast<size_t>(i)] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) {
            t[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                sign * lp.constraints[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        t[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1.0;
        t[static_cast<size_t>(i)][static_cast<size_t>(n + m)] = sign * lp.rhs[static_cast<size_t>(i)];
        basis[static_cast<size_t>(i)] = n + i;
    }

    // Phase 1: maximize -(sum of artificials); cost row primed by adding the
    // constraint rows so that basic artificial columns price to zero.
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= n + m; ++j) {
            t[static_cast<size_t>(m)][static_cast<size_t>(j)] += t[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    for (int i = 0; i < m; ++i) t[static_cast<size_t>(m)][static_cast<size_t>(n + i)] = 0.0;
    if (!run_simplex(t, basis, n)) {
        throw std::runtime_error("simplex_maximize: phase 1 unbounded");
    }
    if (t[static_cast<size_t>(m)][static_cast<size_t>(n + m)] > 1e-8) {
        throw std::runtime_error("simplex_maximize: infeasible program");
    }
    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
        if (basis[static_cast<size_t>(i)] >= n) {
            int col = -1;
            for (int j = 0; j < n; ++j) {
                if (std::abs(t[static_cast<size_t>(i)][static_cast<size_t>(j)]) > kPivotTol) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) pivot(t, basis, i, col);
        }
    }

    // Phase 2: replace the cost row with the real objective, priced out.
    for (int j = 0; j <= n + m; ++j) t[static_cast<size_t>(m)][static_cast<size_t>(j)] = 0.0;
    for (int j = 0; j < n; ++j) t[static_cast<size_t>(m)][static_cast<size_t>(j)] = lp.objective[static_cast<size_t>(j)];
    for (int i = 0; i < m; ++i) {
        const int b = basis[static_cast<size_t>(i)];
        if (b < n) {
            const double cb = lp.objective[static_cast<size_t>(b)];
            if (cb == 0.0) continue;
            for (int j = 0; j <= n + m; ++j) {
                t[static_cast<size_t>(m)][static_cast<size_t>(j)] -= cb * t[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
        }
    }
    if (!run_simplex(t, basis, n)) {
        throw std::runtime_error("simplex_maximize: objective unbounded");
    }

    LpResult result;
    result.x.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < m; ++i) {
        const int b = basis[static_cast<size_t>(i)];
        if (b < n) result.x[static_cast<size_t>(b)] = t[static_cast<size_t>(i)][static_cast<size_t>(n + m)];
    }
    result.value = -t[static_cast<size_t>(m)][static_cast<size_t>(n + m)];
    return result;
}

LinearProgram ns_polytope_program(std::vector<double> objective) {
    if (objective.size() != 16) {
        throw std::invalid_argument("ns_polytope_program: need 16 objective coefficients");
    }
    LinearProgram lp;
    lp.objective = std::move(objective);
    auto var = [](int s, int t, int a, int b) { return ((s << 1) | t) * 4 + ((a << 1) | b); };

    // Normalization, one row per setting pair.
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
            std::vector<double> row(16, 0.0);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) row[static_cast<size_t>(var(s, t, a, b))] = 1.0;
            lp.constraints.push_back(std::move(row));
            lp.rhs.push_back(1.0);
        }
    // Alice's marginal independent of t.
    for (int a = 0; a < 2; ++a)
        for (int s = 0; s < 2; ++s) {
            std::vector<double> row(16, 0.0);
            for (int b = 0; b < 2; ++b) {
                row[static_cast<size_t>(var(s, 0, a, b))] += 1.0;
                row[static_cast<size_t>(var(s, 1, a, b))] -= 1.0;
            }
            lp.constraints.push_back(std::move(row));
            lp.rhs.push_back(0.0);
        }
    // Bob's marginal independent of s.
    for (int b = 0; b < 2; ++b)
        for (int t = 0; t < 2; ++t) {
            std::vector<double> row(16, 0.0);
            for (int a = 0; a < 2; ++a) {
                row[static_cast<size_t>(var(0, t, a, b))] += 1.0;
                row[static_cast<size_t>(var(1, t, a, b))] -= 1.0;
            }
            lp.constraints.push_back(std::move(row));
            lp.rhs.push_back(0.0);
        }
    return lp;
}

NsMaximum ns_maximize(const GameSpec& game, const BiasVector& bias) {
    if (game.parties != 2) {
        throw std::invalid_argument("ns_maximize: bipartite only (svetlichny_box witnesses 3 parties)");
    }
    std::vector<double> objective(16, 0.0);
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
            const std::array<int, 2> st{s, t};
            const double w = bias.joint_prob(std::span<const int>(st.data(), 2));
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const std::array<int, 2> ab{a, b};
                    if (game.wins(std::span<const int>(st.data(), 2), std::span<const int>(ab.data(), 2))) {
                        objective[static_cast<size_t>(((s << 1) | t) * 4 + ((a << 1) | b))] = w;
                    }
                }
        }
    const LpResult lp = simplex_maximize(ns_polytope_program(objective));
    BehaviorBox box(2, lp.x);
    box.validate(1e-8);
    return NsMaximum{lp.value, std::move(box)};
}

double ns_vertex_oracle(const GameSpec& game, const BiasVector& bias) {
    if (game.parties != 2) throw std::invalid_argument("ns_vertex_oracle: bipartite only");
    double best = 0.0;
    for (int code = 0; code < 16; ++code) {
        const BehaviorBox box = box_from_strategy(DeterministicStrategy{2, static_cast<uint16_t>(code)});
        best = std::max(best, game_value(box, game, bias));
    }
    for (int v = 0; v < 8; ++v) {
        const BehaviorBox box = pr_box((v >> 2) & 1, (v >> 1) & 1, v & 1);
        best = std::max(best, game_value(box, game, bias));
    }
    return best;
}

namespace {
double linear_value(const BehaviorBox& box, const std::vector<double>& coeffs) {
    double acc = 0.0;
    for (size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * box.table()[k];
    return acc;
}
}  // namespace

double ns_maximize_linear(const std::vector<double>& coefficients) {
    return simplex_maximize(ns_polytope_program(coefficients)).value;
}

double ns_vertex_linear(const std::vector<double>& coefficients) {
    if (coefficients.size() != 16) throw std::invalid_argument("ns_vertex_linear: need 16 coefficients");
    double best = -1e300;
    for (int code = 0; code < 16; ++code) {
        const BehaviorBox box = box_from_strategy(DeterministicStrategy{2, static_cast<uint16_t>(code)});
        best = std::max(best, linear_value(box, coefficients));
    }
    for (int v = 0; v < 8; ++v) {
        const BehaviorBox box = pr_box((v >> 2) & 1, (v >> 1) & 1, v & 1);
        best = std::max(best, linear_value(box, coefficients));
    }
    return best;
}

}  // namespace nlgames
