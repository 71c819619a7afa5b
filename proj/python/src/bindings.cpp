#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "nlgames/analysis.hpp"
#include "nlgames/classical.hpp"
#include "nlgames/nosignaling.hpp"
#include "nlgames/quantum.hpp"
#include "nlgames/verify.hpp"

namespace py = pybind11;
using namespace nlgames;

namespace {

GameSpec game_from_name(const std::string& name) {
    if (name == "chsh") return chsh_game();
    if (name == "svetlichny") return svetlichny_game();
    throw py::value_error("game must be 'chsh' or 'svetlichny'");
}

BiasVector bias_from_args(const GameSpec& game, double p, double q, std::optional<double> r) {
    if (game.parties == 2) {
        if (r) throw py::value_error("r is only valid for the svetlichny game");
        return BiasVector(p, q);
    }
    return BiasVector(p, q, r.value_or(0.5));
}

py::dict point_dict(const RegionPoint& pt) {
    py::dict d;
    d["p"] = pt.p;
    d["q"] = pt.q;
    if (pt.r) d["r"] = *pt.r;
    d["classical"] = pt.classical;
    d["quantum_analytic"] = pt.quantum_analytic;
    d["quantum_seesaw"] = pt.quantum_seesaw;
    d["nosignaling"] = pt.nosignaling;
    d["region_id"] = pt.region_id;
    d["classification"] = std::string(to_string(pt.classification));
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "solvers for biased CHSH and Svetlichny nonlocal games";

    m.def(
        "classical_max",
        [](const std::string& game_name, double p, double q, std::optional<double> r) {
            const GameSpec game = game_from_name(game_name);
            const BiasVector bias = bias_from_args(game, p, q, r);
            const ClassicalReport report = classical_max(game, bias);
            py::dict d;
            d["max"] = report.max_probability;
            py::list strategies;
            for (const DeterministicStrategy& s : report.argmax) strategies.append(s.code);
            d["strategies"] = strategies;
            return d;
        },
        py::arg("game"), py::arg("p"), py::arg("q"), py::arg("r") = py::none(),
        "Exact local-deterministic maximum winning probability by enumeration.");

    m.def(
        "classical_max_analytic",
        [](const std::string& game_name, double p, double q, std::optional<double> r) {
            const GameSpec game = game_from_name(game_name);
            return classical_max_analytic(game, bias_from_args(game, p, q, r));
        },
        py::arg("game"), py::arg("p"), py::arg("q"), py::arg("r") = py::none(),
        "Closed-form classical bound 1-(1-p)(1-q) on the canonical quadrant.");

    m.def(
        "quantum_max_analytic",
        [](const std::string& game_name, double p, double q, std::optional<double> r) {
            const GameSpec game = game_from_name(game_name);
            const BiasVector bias = bias_from_args(game, p, q, r);
            const QuantumBound qb = game.parties == 2 ? analytic_quantum_max_bipartite(bias)
                                                      : analytic_quantum_max_tripartite_bipartition(bias);
            return py::make_tuple(probability_from_bell(qb.value), qb.region);
        },
        py::arg("game"), py::arg("p"), py::arg("q"), py::arg("r") = py::none(),
        "(winning probability, region) from the piecewise closed forms.");

    m.def(
        "seesaw",
        [](const std::string& game_name, double p, double q, std::optional<double> r, int restarts,
           uint64_t seed) {
            const GameSpec game = game_from_name(game_name);
            const BiasVector bias = bias_from_args(game, p, q, r);
            SeesawOptions opts;
            opts.restarts = restarts;
            opts.seed = seed;
            const SeesawResult res = seesaw_optimize(coefficient_table(game, bias), game.parties, opts);
            py::dict d;
            d["value"] = probability_from_bell(std::min(1.0, res.value));
            d["bell_value"] = res.value;
            d["converged"] = res.converged;
            d["iterations"] = res.iterations;
            return d;
        },
        py::arg("game"), py::arg("p"), py::arg("q"), py::arg("r") = py::none(),
        py::arg("restarts") = 20, py::arg("seed") = 20120702,
        "Variational see-saw maximum (winning probability).");

    m.def(
        "nosignaling_max",
        [](const std::string& game_name, double p, double q, std::optional<double> r) {
            const GameSpec game = game_from_name(game_name);
            const BiasVector bias = bias_from_args(game, p, q, r);
            if (game.parties == 2) return ns_maximize(game, bias).value;
            return game_value(svetlichny_box(), game, bias);
        },
        py::arg("game"), py::arg("p"), py::arg("q"), py::arg("r") = py::none(),
        "No-signaling maximum (LP for two parties, Svetlichny box witness for three).");

    m.def(
        "classify",
        [](const std::string& game_name, double p, double q, std::optional<double> r, int restarts,
           uint64_t seed, bool with_seesaw) {
            const GameSpec game = game_from_name(game_name);
            const BiasVector bias = bias_from_args(game, p, q, r);
            AnalysisOptions opts;
            opts.restarts = restarts;
            opts.seed = seed;
            opts.with_seesaw = with_seesaw;
            return point_dict(classify_point(game, bias, opts));
        },
        py::arg("game"), py::arg("p"), py::arg("q"), py::arg("r") = py::none(),
        py::arg("restarts") = 20, py::arg("seed") = 20120702, py::arg("with_seesaw") = true,
        "All bounds plus the advantage classification at one bias point.");

    m.def(
        "scan_csv",
        [](const std::string& game_name, int resolution, int restarts, uint64_t seed, int jobs) {
            const GameSpec game = game_from_name(game_name);
            AnalysisOptions opts;
            opts.restarts = restarts;
            opts.seed = seed;
            opts.jobs = jobs;
            const PhaseDiagram diagram = scan_grid(game, resolution, opts);
            std::ostringstream os;
            write_csv(diagram, os);
            return os.str();
        },
        py::arg("game"), py::arg("resolution"), py::arg("restarts") = 20,
        py::arg("seed") = 20120702, py::arg("jobs") = 1,
        "Phase-diagram grid scan rendered as CSV text.");

    m.def(
        "threshold_on_diagonal",
        [](const std::string& game_name, double tolerance) {
            return threshold_on_diagonal(game_from_name(game_name), tolerance);
        },
        py::arg("game"), py::arg("tolerance") = 1e-7,
        "Advantage threshold on the equal-bias diagonal from the analytic bounds.");

    m.def(
        "pr_box_value",
        [](int alpha, int beta, int gamma, double p, double q) {
            return game_value(pr_box(alpha, beta, gamma), chsh_game(), BiasVector(p, q));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("p"), py::arg("q"));

    m.def(
        "verify_report",
        [](uint64_t seed, int restarts, bool thorough) {
            VerifyOptions options;
            options.seed = seed;
            options.restarts = restarts;
            options.thorough = thorough;
            return verification_report_json(run_verification(options), options);
        },
        py::arg("seed") = 20120702, py::arg("restarts") = 10, py::arg("thorough") = false,
        "JSON report of the invariant battery.");
}
