#include "nlgames/classical.hpp"

#include <array>
#include <stdexcept>

namespace nlgames {

double evaluate_strategy(const GameSpec& game, const BiasVector& bias,
                         const DeterministicStrategy& strat) {
    if (bias.parties() != game.parties || strat.parties != game.parties) {
        throw std::invalid_argument("evaluate_strategy: arity mismatch");
    }
    const int n = game.parties;
    double win = 0.0;
    for (int idx = 0; idx < (1 << n); ++idx) {
        std::array<int, 3> settings{};
        std::array<int, 3> outcomes{};
        for (int k = 0; k < n; ++k) {
            settings[static_cast<size_t>(k)] = (idx >> (n - 1 - k)) & 1;
            outcomes[static_cast<size_t>(k)] = strat.outcome(k, settings[static_cast<size_t>(k)]);
        }
        std::span<const int> s(settings.data(), static_cast<size_t>(n));
        std::span<const int> o(outcomes.data(), static_cast<size_t>(n));
        if (game.wins(s, o)) win += bias.joint_prob(s);
    }
    return win;
}

ClassicalReport classical_max(const GameSpec& game, const BiasVector& bias) {
    if (bias.parties() != game.parties) {
        throw std::invalid_argument("classical_max: arity mismatch");
    }
    ClassicalReport report{0.0, {}, bias};
    const int total = DeterministicStrategy::count(game.parties);
    std::vector<double> values(static_cast<size_t>(total));
    double best = 0.0;
    for (int code = 0; code < total; ++code) {
        DeterministicStrategy s{game.parties, static_cast<uint16_t>(code)};
        const double v = evaluate_strategy(game, bias, s);
        values[static_cast<size_t>(code)] = v;
        if (v > best) best = v;
    }
    report.max_probability = best;
    for (int code = 0; code < total; ++code) {
        if (values[static_cast<size_t>(code)] >= best - 1e-15) {
            report.argmax.push_back(DeterministicStrategy{game.parties, static_cast<uint16_t>(code)});
        }
    }
    return report;
}

double classical_max_analytic(const GameSpec& game, const BiasVector& bias) {
    if (bias.parties() != game.parties) {
        throw std::invalid_argument("classical_max_analytic: arity mismatch");
    }
    const double p = bias.p();
    const double q = bias.q();
    bool canonical = p >= 0.5 && q >= 0.5;
    if (game.parties == 3) canonical = canonical && bias.r() >= 0.5;
    if (!canonical) {
        throw std::invalid_argument("classical_max_analytic: bias outside the canonical quadrant");
    }
    return 1.0 - (1.0 - p) * (1.0 - q);
}

}  // namespace nlgames
