#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schrospec/action.hpp"
#include "schrospec/numerics.hpp"

namespace schrospec {

struct StokesCurve {
    enum class Terminal { ToInfinity, ToTurningPoint };

    ComplexValue origin;
    int origin_index = 0;          // 0 -> turning point 0, 1 -> the other one
    int direction_index = 0;       // k in base + 2 pi k / 3
    double initial_angle = 0.0;
    std::vector<ComplexValue> points;   // starts at origin
    Terminal terminal = Terminal::ToInfinity;
    double asymptotic_angle = 0.0;      // valid for ToInfinity, reduced to [0, 2pi)
    int target_index = -1;              // valid for ToTurningPoint
    double max_abs_re_action = 0.0;     // max |Re S| seen at stored points while tracing
};

struct StokesGraph {
    PotentialQuadratic potential;
    std::vector<StokesCurve> curves;    // sorted by origin, then initial angle in [0, 2pi)
    std::vector<int> complex1;          // curves emitted by turning point 0
    std::vector<int> complex2;          // curves emitted by the other turning point
    bool compound = false;
    std::vector<std::string> diagnostics;
};

struct TraceOptions {
    double max_arclen = 12.0;
    double step = 0.0;        // 0 selects 1e-3 * max(1, |tp1 - tp0|)
    double departure = 1e-4;  // distance of the first point from the turning point
};

std::vector<ComplexValue> turning_points(const PotentialQuadratic& pot);

/// Initial inclination of Stokes curve k at turning point `which`: (pi - arg P'(tp)) / 3 + 2 pi k / 3.
/// For T_FORM at t = 0 this is -psi/3 + 2 pi k / 3.
double stokes_initial_angle(const PotentialQuadratic& pot, int which, int k);

/// Follows the level line Re S = 0, S(z) = integral of sqrt(P) from the turning point, by a
/// predictor-corrector walk.
StokesCurve trace_stokes_curve(const PotentialQuadratic& pot, int which, int k, const TraceOptions& opts = {});

StokesCurve trace_stokes_curve(const PotentialQuadratic& pot, ComplexValue tp, int k, double max_arclen,
                               double step);

/// Traces all six curves; step = 0 keeps the TraceOptions default.
StokesGraph build_stokes_graph(const PotentialQuadratic& pot, double max_arclen = 12.0, double step = 0.0);

struct RayExtremum {
    double tau0;
    double beta0;
};

/// Single extremum of Re S along the ray arg z = gamma - psi, when it exists.
std::optional<RayExtremum> ray_extremum(double gamma, double psi);

struct RayCrossing {
    int curve;
    double radius;
    ComplexValue point;
};

struct RayCrossingReport {
    double gamma = 0.0;
    double psi = 0.0;
    std::vector<RayCrossing> crossings_complex1;   // away from z = 0
    std::vector<RayCrossing> crossings_complex2;
    std::optional<RayExtremum> extremum;
    bool compound = false;

    std::size_t count1() const { return crossings_complex1.size(); }
    std::size_t count2() const { return crossings_complex2.size(); }
};

inline constexpr double kCrossingTraceStep = 5e-3;

/// Crossings of the ray {tau e^{i(gamma - psi)}, tau > 0} with the Stokes graph of the Z_FORM potential,
/// traced with a step of kCrossingTraceStep (crossing counts do not need the fine default). The graph is
/// retraced at the default step when the coarse one disagrees with the analytic compound test.
RayCrossingReport ray_crossing_report(double psi, double gamma, double max_arclen = 12.0);

RayCrossingReport ray_crossing_report(const StokesGraph& graph, double psi, double gamma);

enum class RayRegime { Inner, Monotone, Outer };

/// Regime of (gamma, psi): Inner for 0 < psi < gamma, Monotone for gamma < psi <= 2pi - 3 gamma,
/// Outer for 2pi - 3 gamma < psi < 2pi.
RayRegime ray_regime(double gamma, double psi);

/// Whether the report's crossing counts agree with the classification for its regime.
bool crossing_counts_consistent(const RayCrossingReport& report);

/// Reports at psi points placed mid-cell on uniform grids of the Inner, Monotone and Outer psi
/// intervals, in that order; the points are evaluated concurrently.
std::vector<RayCrossingReport> crossing_sweep(double gamma, int points_per_regime);

/// Largest distance from a point of `a` to the polyline `b` (directed Hausdorff distance).
double polyline_distance(const std::vector<ComplexValue>& a, const std::vector<ComplexValue>& b);

}  // namespace schrospec
