// nlgames: bounds, scans, constructive strategies and the verification
// battery for biased CHSH and Svetlichny games.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlgames/analysis.hpp"
#include "nlgames/classical.hpp"
#include "nlgames/json_io.hpp"
#include "nlgames/nosignaling.hpp"
#include "nlgames/quantum.hpp"
#include "nlgames/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitNonConvergence = 3;

struct GameArgs {
    std::string game = "chsh";
    double p = 0.5;
    double q = 0.5;
    std::optional<double> r;
};

nlgames::GameSpec resolve_game(const GameArgs& args) {
    if (args.game == "chsh") return nlgames::chsh_game();
    if (args.game == "svetlichny") return nlgames::svetlichny_game();
    throw CLI::ValidationError("--game must be chsh or svetlichny");
}

nlgames::BiasVector resolve_bias(const GameArgs& args) {
    const nlgames::GameSpec game = resolve_game(args);
    if (game.parties == 2) {
        if (args.r) throw CLI::ValidationError("--r is only valid for the svetlichny game");
        return nlgames::BiasVector(args.p, args.q);
    }
    return nlgames::BiasVector(args.p, args.q, args.r.value_or(0.5));
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output path: " + out_path);
    f << content;
}

ordered_json state_json(const nlgames::StateVector& state) {
    ordered_json amps = ordered_json::array();
    for (int i = 0; i < state.dim(); ++i) {
        amps.push_back({state.amplitude(i).real(), state.amplitude(i).imag()});
    }
    return amps;
}

int cmd_bounds(const GameArgs& args, int restarts, uint64_t seed, int jobs,
               const std::string& format, const std::string& out_path, bool bell) {
    const nlgames::GameSpec game = resolve_game(args);
    const nlgames::BiasVector bias = resolve_bias(args);
    nlgames::AnalysisOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    opts.jobs = jobs;
    const nlgames::RegionPoint pt = nlgames::classify_point(game, bias, opts);

    auto emit = [&](double prob) { return bell ? nlgames::bell_from_probability(prob) : prob; };
    if (format == "json") {
        ordered_json j = nlgames::game_bias_json(game, bias);
        j["schema"] = 1;
        j["unit"] = bell ? "bell" : "probability";
        j["classical"] = emit(pt.classical);
        j["quantum_analytic"] = emit(pt.quantum_analytic);
        j["quantum_seesaw"] = emit(pt.quantum_seesaw);
        j["nosignaling"] = emit(pt.nosignaling);
        j["region_id"] = pt.region_id;
        j["classification"] = nlgames::to_string(pt.classification);
        j["classical_report"] = nlgames::classical_report_json(game, nlgames::classical_max(game, bias));
        if (game.parties == 2) {
            j["nosignaling_box"] = nlgames::behavior_box_json(nlgames::ns_maximize(game, bias).box);
        }
        write_output(out_path, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        char line[160];
        std::snprintf(line, sizeof(line), "game            %s\n", args.game.c_str());
        os << line;
        std::snprintf(line, sizeof(line), "bias            p=%g q=%g", args.p, args.q);
        os << line;
        if (game.parties == 3) os << " r=" << bias.r();
        os << "\n";
        const char* unit = bell ? " (bell values)" : " (winning probabilities)";
        os << "bounds" << unit << "\n";
        std::snprintf(line, sizeof(line), "  classical     %.6f\n", emit(pt.classical));
        os << line;
        std::snprintf(line, sizeof(line), "  quantum       %.6f (analytic, region %d)\n",
                      emit(pt.quantum_analytic), pt.region_id);
        os << line;
        std::snprintf(line, sizeof(line), "  quantum       %.6f (see-saw, %d restarts)\n",
                      emit(pt.quantum_seesaw), restarts);
        os << line;
        std::snprintf(line, sizeof(line), "  no-signaling  %.6f\n", emit(pt.nosignaling));
        os << line;
        os << "classification  " << nlgames::to_string(pt.classification) << "\n";
        write_output(out_path, os.str());
    }
    return kExitOk;
}

int cmd_scan(const GameArgs& args, int resolution, int restarts, uint64_t seed, int jobs,
             const std::string& format, const std::string& out_path) {
    const nlgames::GameSpec game = resolve_game(args);
    nlgames::AnalysisOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    opts.jobs = jobs;
    if (args.r) {
        if (game.parties != 3) throw CLI::ValidationError("--r is only valid for the svetlichny game");
        if (*args.r < 0.0 || *args.r > 1.0) throw CLI::ValidationError("--r must lie in [0,1]");
        opts.fixed_r = *args.r;
    }
    const nlgames::PhaseDiagram diagram = nlgames::scan_grid(game, resolution, opts);
    std::ostringstream os;
    if (format == "svg") {
        nlgames::write_svg(diagram, os);
    } else {
        nlgames::write_csv(diagram, os);
    }
    write_output(out_path, os.str());
    return kExitOk;
}

int cmd_strategy(const GameArgs& args, int restarts, uint64_t seed, const std::string& out_path) {
    const nlgames::GameSpec game = resolve_game(args);
    const nlgames::BiasVector bias = resolve_bias(args);
    const nlgames::CanonicalBias canon = nlgames::canonicalize_bias(bias);

    nlgames::SeesawOptions so;
    so.restarts = restarts;
    so.seed = seed;
    const nlgames::SeesawResult seesaw =
        nlgames::seesaw_optimize(nlgames::coefficient_table(game, canon.bias), game.parties, so);

    ordered_json j = nlgames::game_bias_json(game, bias);
    j["schema"] = 1;
    if (!canon.transform.identity()) {
        j["note"] = "strategy given for the canonical bias; flip the marked settings to map back";
        j["canonical"] = {{"p", canon.bias.p()}, {"q", canon.bias.q()}};
        if (game.parties == 3) j["canonical"]["r"] = canon.bias.r();
        j["flipped_settings"] = {canon.transform.flipped[0], canon.transform.flipped[1],
                                 canon.transform.flipped[2]};
    }

    double constructive = 0.0;
    double analytic = 0.0;
    if (game.parties == 2) {
        analytic = nlgames::analytic_quantum_max_bipartite(canon.bias).value;
        const nlgames::PlanarChshOptimum opt =
            nlgames::optimal_planar_chsh(canon.bias.p(), canon.bias.q());
        nlgames::QuantumStrategy strat;
        strat.state = nlgames::bell_phi_plus();
        strat.observables = {{nlgames::planar_observable(opt.alpha0), nlgames::planar_observable(opt.alpha1)},
                             {nlgames::planar_observable(opt.beta0), nlgames::planar_observable(opt.beta1)}};
        constructive = nlgames::quantum_value(nlgames::coefficient_table(game, canon.bias), strat);
        const ordered_json sj = nlgames::quantum_strategy_json(strat);
        j["state"] = sj["state"];
        j["parties"] = sj["parties"];
    } else {
        analytic = nlgames::analytic_quantum_max_tripartite_bipartition(canon.bias).value;
        const nlgames::GhzBipartitionStrategy strat = nlgames::ghz_bipartition_strategy(canon.bias);
        constructive = nlgames::bipartition_value(strat);
        j["state"] = state_json(strat.state);
        j["model"] = "bipartition";
        j["branch0"] = {{"alice", {observable_json(strat.alice_branch0[0]), observable_json(strat.alice_branch0[1])}},
                        {"bob", {observable_json(strat.bob_branch0[0]), observable_json(strat.bob_branch0[1])}}};
        j["branch1"] = {{"alice", {observable_json(strat.alice_branch1[0]), observable_json(strat.alice_branch1[1])}},
                        {"bob", {observable_json(strat.bob_branch1[0]), observable_json(strat.bob_branch1[1])}}};
        j["charlie"] = {observable_json(strat.charlie[0]), observable_json(strat.charlie[1])};
    }

    j["value"] = nlgames::probability_from_bell(constructive);
    j["bell_value"] = constructive;
    j["analytic"] = nlgames::probability_from_bell(analytic);
    j["seesaw"] = {{"value", nlgames::probability_from_bell(std::min(1.0, seesaw.value))},
                   {"converged", seesaw.converged},
                   {"restarts", restarts}};

    const bool matched = std::abs(constructive - analytic) <= 1e-9;
    if (!seesaw.converged) {
        std::cerr << "warning: see-saw did not converge within the iteration cap\n";
    }
    if (!matched) {
        std::cerr << "error: constructive strategy missed the analytic bound\n";
        return kExitNonConvergence;
    }
    write_output(out_path, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(uint64_t seed, int restarts, bool thorough, const std::string& format,
               const std::string& out_path) {
    nlgames::VerifyOptions options;
    options.seed = seed;
    options.restarts = restarts;
    options.thorough = thorough;
    const std::vector<nlgames::CheckResult> results = nlgames::run_verification(options);

    bool all = true;
    std::ostringstream table;
    for (const nlgames::CheckResult& r : results) {
        all = all && r.pass;
        table << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail << ")\n";
    }
    table << (all ? "all checks passed" : "some checks FAILED") << "\n";

    if (format == "json") {
        write_output(out_path, nlgames::verification_report_json(results, options));
        if (out_path.empty()) std::cerr << (all ? "all checks passed\n" : "some checks FAILED\n");
    } else {
        write_output(out_path, table.str());
    }
    if (!all) {
        for (const nlgames::CheckResult& r : results) {
            if (!r.pass) std::cerr << "failed invariant: " << r.name << "\n";
        }
        return kExitVerifyFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver toolkit for biased CHSH and Svetlichny nonlocal games"};
    app.require_subcommand(1);

    GameArgs args;
    int resolution = 41;
    int restarts = 20;
    uint64_t seed = 20120702;
    int jobs = 1;
    std::string out_path;
    std::string format;
    bool bell = false;
    bool thorough = false;

    auto add_game_flags = [&](CLI::App* cmd) {
        cmd->add_option("--game", args.game, "chsh or svetlichny")->default_str("chsh");
        cmd->add_option("--p", args.p, "P(first party picks setting 0)");
        cmd->add_option("--q", args.q, "P(second party picks setting 0)");
        cmd->add_option("--r", args.r, "P(third party picks setting 0), svetlichny only (default 0.5)");
        cmd->add_option("--seed", seed, "random seed for the see-saw restarts");
        cmd->add_option("--restarts", restarts, "see-saw restarts");
        cmd->add_option("--out", out_path, "output path (stdout when omitted)");
    };

    CLI::App* bounds = app.add_subcommand("bounds", "classical/quantum/no-signaling bounds at one bias point");
    add_game_flags(bounds);
    bounds->add_option("--jobs", jobs, "worker threads");
    bounds->add_option("--format", format, "text or json")->default_str("text");
    bounds->add_flag("--bell", bell, "report Bell values instead of winning probabilities");

    CLI::App* scan = app.add_subcommand("scan", "grid scan over the bias space");
    add_game_flags(scan);
    scan->add_option("--resolution", resolution, "grid nodes per axis (>= 2)");
    scan->add_option("--jobs", jobs, "worker threads");
    scan->add_option("--format", format, "csv or svg")->default_str("csv");

    CLI::App* strategy = app.add_subcommand("strategy", "constructive strategy achieving the analytic bound");
    add_game_flags(strategy);

    CLI::App* verify = app.add_subcommand("verify", "run the invariant battery");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--restarts", restarts, "see-saw restarts used by the checks");
    verify->add_flag("--thorough", thorough, "acceptance-sized grids");
    verify->add_option("--format", format, "text or json")->default_str("text");
    verify->add_option("--out", out_path, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (bounds->parsed()) {
            if (format.empty()) format = "text";
            if (format != "text" && format != "json") throw CLI::ValidationError("--format must be text or json");
            return cmd_bounds(args, restarts, seed, jobs, format, out_path, bell);
        }
        if (scan->parsed()) {
            if (format.empty()) format = "csv";
            if (format != "csv" && format != "svg") throw CLI::ValidationError("--format must be csv or svg");
            if (resolution < 2) throw CLI::ValidationError("--resolution must be >= 2");
            return cmd_scan(args, resolution, restarts, seed, jobs, format, out_path);
        }
        if (strategy->parsed()) {
            return cmd_strategy(args, restarts, seed, out_path);
        }
        if (verify->parsed()) {
            if (format.empty()) format = "text";
            if (format != "text" && format != "json") throw CLI::ValidationError("--format must be text or json");
            return cmd_verify(seed, restarts, thorough, format, out_path);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    }
    return kExitUsage;
}
