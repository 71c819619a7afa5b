#include "nlgames/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "nlgames/classical.hpp"
#include "nlgames/nosignaling.hpp"

namespace nlgames {

CanonicalBias canonicalize_bias(const BiasVector& bias) {
    BiasTransform tr;
    auto fold = [&](double x, int party) {
        if (x < 0.5) {
            tr.flipped[static_cast<size_t>(party)] = true;
            return 1.0 - x;
        }
        return x;
    };
    const double p = fold(bias.p(), 0);
    const double q = fold(bias.q(), 1);
    if (bias.parties() == 2) return CanonicalBias{BiasVector(p, q), tr};
    const double r = fold(bias.r(), 2);
    return CanonicalBias{BiasVector(p, q, r), tr};
}

const char* to_string(Classification c) {
    return c == Classification::quantum_advantage ? "quantum-advantage" : "no-quantum-advantage";
}

namespace {
constexpr double kAdvantageEps = 1e-9;

RegionPoint classify_impl(const GameSpec& game, const BiasVector& bias,
                          const AnalysisOptions& options) {
    RegionPoint pt;
    pt.p = bias.p();
    pt.q = bias.q();
    if (bias.parties() == 3) pt.r = bias.r();

    const CanonicalBias canon = canonicalize_bias(bias);
    pt.classical = classical_max_analytic(game, canon.bias);
    const QuantumBound qb = game.parties == 2
                                ? analytic_quantum_max_bipartite(canon.bias)
                                : analytic_quantum_max_tripartite_bipartition(canon.bias);
    pt.quantum_analytic = probability_from_bell(qb.value);
    pt.region_id = qb.region;

    if (options.with_seesaw) {
        SeesawOptions so;
        so.restarts = options.restarts;
        so.seed = options.seed;
        const CoefficientTable table = coefficient_table(game, bias);
        pt.quantum_seesaw = probability_from_bell(
            std::min(1.0, seesaw_optimize(table, game.parties, so).value));
    } else {
        pt.quantum_seesaw = std::nan("");
    }

    // The no-signaling maximum is 1 for both games: the LP confirms it for
    // two parties, the Svetlichny box witnesses it for three.
    if (game.parties == 2) {
        pt.nosignaling = ns_maximize(game, bias).value;
    } else {
        pt.nosignaling = game_value(svetlichny_box(), game, bias);
    }

    pt.classification = (pt.quantum_analytic - pt.classical > kAdvantageEps)
                            ? Classification::quantum_advantage
                            : Classification::no_quantum_advantage;
    return pt;
}
}  // namespace

RegionPoint classify_point(const GameSpec& game, const BiasVector& bias,
                           const AnalysisOptions& options) {
    if (bias.parties() != game.parties) throw std::invalid_argument("classify_point: arity mismatch");
    return classify_impl(game, bias, options);
}

PhaseDiagram scan_grid(const GameSpec& game, int resolution, const AnalysisOptions& options) {
    if (resolution < 2) throw std::invalid_argument("scan_grid: resolution must be >= 2");
    PhaseDiagram diagram;
    diagram.parties = game.parties;
    diagram.resolution = resolution;

    const double step = 1.0 / (resolution - 1);
    auto node = [&](int i) { return i == resolution - 1 ? 1.0 : i * step; };
    std::vector<BiasVector> grid;
    if (game.parties == 2) {
        grid.reserve(static_cast<size_t>(resolution) * resolution);
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j) grid.emplace_back(node(i), node(j));
    } else if (options.fixed_r) {
        grid.reserve(static_cast<size_t>(resolution) * resolution);
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j) grid.emplace_back(node(i), node(j), *options.fixed_r);
    } else {
        grid.reserve(static_cast<size_t>(resolution) * resolution * resolution);
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j)
                for (int k = 0; k < resolution; ++k) grid.emplace_back(node(i), node(j), node(k));
    }

    diagram.points.resize(grid.size());
    const int jobs = std::max(1, options.jobs);
    auto worker = [&](size_t begin, size_t stride) {
        for (size_t idx = begin; idx < grid.size(); idx += stride) {
            AnalysisOptions per_point = options;
            per_point.seed = options.seed + idx;  // deterministic regardless of worker layout
            diagram.points[idx] = classify_impl(game, grid[idx], per_point);
        }
    };
    if (jobs == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(jobs));
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, static_cast<size_t>(w), static_cast<size_t>(jobs));
        for (std::thread& th : pool) th.join();
    }

    const int samples = 101;
    for (int i = 0; i < samples; ++i) {
        const double q = 0.5 + 0.5 * i / (samples - 1);
        diagram.boundary.push_back({1.0 / (2.0 * q), q});
    }
    return diagram;
}

double threshold_on_diagonal(const GameSpec& game, double tolerance) {
    if (tolerance <= 0.0) throw std::invalid_argument("threshold_on_diagonal: tolerance must be > 0");
    auto advantage = [&](double x) {
        const BiasVector bias = game.parties == 2 ? BiasVector(x, x) : BiasVector(x, x, x);
        const CanonicalBias canon = canonicalize_bias(bias);
        const QuantumBound qb = game.parties == 2
                                    ? analytic_quantum_max_bipartite(canon.bias)
                                    : analytic_quantum_max_tripartite_bipartition(canon.bias);
        return probability_from_bell(qb.value) - classical_max_analytic(game, canon.bias) > 1e-12;
    };
    double lo = 0.5, hi = 1.0;
    if (!advantage(lo) || advantage(hi)) {
        throw std::runtime_error("threshold_on_diagonal: no sign change on the diagonal");
    }
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (advantage(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<double> seesaw_threshold_on_diagonal(const GameSpec& game, double tolerance,
                                                   const AnalysisOptions& options) {
    if (tolerance <= 0.0) throw std::invalid_argument("seesaw_threshold_on_diagonal: tolerance must be > 0");
    SeesawOptions so;
    so.restarts = options.restarts;
    so.seed = options.seed;
    // Compared against the enumerated (true local) maximum: the see-saw
    // explores fixed strategies, so the branch-decoupled closed form would
    // never be beaten in region 1 and the crossover would be meaningless.
    auto advantage = [&](double x) {
        const BiasVector bias = game.parties == 2 ? BiasVector(x, x) : BiasVector(x, x, x);
        const CoefficientTable table = coefficient_table(game, bias);
        const double seesaw = seesaw_optimize(table, game.parties, so).value;
        const double classical = bell_from_probability(classical_max(game, bias).max_probability);
        return seesaw - classical > 1e-5;
    };
    double lo = 0.5, hi = 1.0;
    if (!advantage(lo) || advantage(hi)) return std::nullopt;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (advantage(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
}

void write_csv(const PhaseDiagram& diagram, std::ostream& out) {
    out << "p,q,r,classical,quantum_analytic,quantum_seesaw,nosignaling,region_id,classification\n";
    for (const RegionPoint& pt : diagram.points) {
        out << format_float(pt.p) << ',' << format_float(pt.q) << ',';
        if (pt.r) out << format_float(*pt.r);
        out << ',' << format_float(pt.classical) << ',' << format_float(pt.quantum_analytic) << ','
            << format_float(pt.quantum_seesaw) << ',' << format_float(pt.nosignaling) << ','
            << pt.region_id << ',' << to_string(pt.classification) << '\n';
    }
}

void write_svg(const PhaseDiagram& diagram, std::ostream& out) {
    const int res = diagram.resolution;
    const double size = 560.0, margin = 40.0;
    const double plot = size - 2.0 * margin;
    const double cell = plot / res;
    auto px = [&](double v) { return margin + v * plot; };
    auto py = [&](double v) { return size - margin - v * plot; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // For three parties the diagram shows one (p,q) slice of the grid; the
    // classification is r-independent so the choice does not matter.
    const double slice_r =
        (!diagram.points.empty() && diagram.points.front().r) ? *diagram.points.front().r : 0.0;
    for (const RegionPoint& pt : diagram.points) {
        if (pt.r && std::abs(*pt.r - slice_r) > 1e-12) continue;
        const char* color =
            pt.classification == Classification::quantum_advantage ? "#4477aa" : "#dddddd";
        const double x0 = std::max(margin, px(pt.p) - cell / 2);
        const double x1 = std::min(margin + plot, px(pt.p) + cell / 2);
        const double y0 = std::max(margin, py(pt.q) - cell / 2);
        const double y1 = std::min(margin + plot, py(pt.q) + cell / 2);
        out << "<rect x=\"" << format_float(x0) << "\" y=\"" << format_float(y0) << "\" width=\""
            << format_float(x1 - x0) << "\" height=\"" << format_float(y1 - y0) << "\" fill=\""
            << color << "\"/>\n";
    }

    // Analytic boundary p*q = 1/2 in the canonical quadrant and its three
    // mirror images.
    const std::array<std::array<double, 2>, 4> mirrors{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    for (const auto& m : mirrors) {
        out << "<polyline fill=\"none\" stroke=\"#cc3311\" stroke-width=\"2\" points=\"";
        for (const auto& b : diagram.boundary) {
            const double bp = m[0] > 0 ? b[0] : 1.0 - b[0];
            const double bq = m[1] > 0 ? b[1] : 1.0 - b[1];
            out << format_float(px(bp)) << ',' << format_float(py(bq)) << ' ';
        }
        out << "\"/>\n";
    }

    out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot << "\" height=\""
        << plot << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    out << "<text x=\"" << size / 2 << "\" y=\"" << size - 8
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">p</text>\n";
    out << "<text x=\"12\" y=\"" << size / 2
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 12 "
        << size / 2 << ")\">q</text>\n";
    out << "</svg>\n";
}

}  // namespace nlgames
