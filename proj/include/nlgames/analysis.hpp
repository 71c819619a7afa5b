#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlgames/game.hpp"
#include "nlgames/quantum.hpp"

// Classification of bias-parameter space by dominating correlation class,
// grid scans for phase diagrams, and the advantage threshold on the
// equal-bias diagonal.

namespace nlgames {

// Input-relabel/output-flip symmetry: each component is mapped into
// [1/2, 1]; the per-party flip flags let strategies be mapped back.
struct BiasTransform {
    std::array<bool, 3> flipped{false, false, false};
    bool identity() const { return !flipped[0] && !flipped[1] && !flipped[2]; }
};

struct CanonicalBias {
    BiasVector bias;
    BiasTransform transform;
};

CanonicalBias canonicalize_bias(const BiasVector& bias);

enum class Classification { no_quantum_advantage, quantum_advantage };

const char* to_string(Classification c);

// All values are winning probabilities. classical and quantum_analytic are
// the closed-form bounds of the canonicalized point (for three parties the
// branch-decoupled bounds, r-independent); quantum_seesaw is the fixed-
// strategy variational maximum and may sit below quantum_analytic for
// three parties.
struct RegionPoint {
    double p = 0.0, q = 0.0;
    std::optional<double> r;
    double classical = 0.0;
    double quantum_analytic = 0.0;
    double quantum_seesaw = 0.0;
    double nosignaling = 0.0;
    int region_id = 0;
    Classification classification = Classification::no_quantum_advantage;
};

struct AnalysisOptions {
    int restarts = 20;
    uint64_t seed = 20120702;
    bool with_seesaw = true;  // seesaw column is NaN-free only when enabled
    int jobs = 1;
    // Tripartite scans only: sweep the (p,q) plane at this fixed r instead
    // of the full cube.
    std::optional<double> fixed_r;
};

RegionPoint classify_point(const GameSpec& game, const BiasVector& bias,
                           const AnalysisOptions& options = {});

struct PhaseDiagram {
    int parties = 2;
    int resolution = 0;
    std::vector<RegionPoint> points;                 // grid-index order
    std::vector<std::array<double, 2>> boundary;     // (p, q) with p*q = 1/2
};

// classify_point on every node of the [0,1]^d grid (endpoints included),
// d = game.parties dimensions (2, or 3 with the r axis).
PhaseDiagram scan_grid(const GameSpec& game, int resolution,
                       const AnalysisOptions& options = {});

// Bisection for the advantage/no-advantage crossover on p = q (= r), using
// the analytic bounds; 1/sqrt(2) for both games.
double threshold_on_diagonal(const GameSpec& game, double tolerance);

// Diagnostic: crossover of the full see-saw value against the analytic
// classical bound on the equal-bias diagonal. Returns nullopt when no sign
// change is bracketed.
std::optional<double> seesaw_threshold_on_diagonal(const GameSpec& game, double tolerance,
                                                   const AnalysisOptions& options = {});

// Fixed CSV schema: p,q,r,classical,quantum_analytic,quantum_seesaw,
// nosignaling,region_id,classification; floats at 9 significant digits,
// r empty for bipartite rows.
void write_csv(const PhaseDiagram& diagram, std::ostream& out);

// Self-contained SVG heat map (classification color-coded, analytic
// boundary overlaid).
void write_svg(const PhaseDiagram& diagram, std::ostream& out);

// Shared float formatting for all deterministic text output.
std::string format_float(double v);

}  // namespace nlgames
