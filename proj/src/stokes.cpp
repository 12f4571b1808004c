#include "schrospec/stokes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

namespace schrospec {

namespace {

double reduce_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    return a < 0.0 ? a + 2.0 * kPi : a;
}

ComplexValue unit_tangent(ComplexValue sqrt_p, ComplexValue previous) {
    ComplexValue t = ComplexValue(0.0, 1.0) * std::conj(sqrt_p) / std::abs(sqrt_p);
    if ((t * std::conj(previous)).real() < 0.0)
        t = -t;
    return t;
}

// Integral of the continued sqrt(P) over the straight segment from the tracker's position to z.
// The tracker is advanced to z.
ComplexValue segment_action(BranchTracker& tracker, ComplexValue z) {
    const GaussRule& rule = gauss_rule(10);
    const ComplexValue a = tracker.position();
    const ComplexValue mid = 0.5 * (a + z), half = 0.5 * (z - a);
    ComplexValue sum = 0.0;
    for (int i = 0; i < 10; ++i)
        sum += rule.weights[i] * tracker.advance(mid + half * rule.nodes[i]).value;
    tracker.advance(z);
    return sum * half;
}

}  // namespace

std::vector<ComplexValue> turning_points(const PotentialQuadratic& pot) {
    const auto tps = pot.turning_points();
    return {tps[0], tps[1]};
}

double stokes_initial_angle(const PotentialQuadratic& pot, int which, int k) {
    return (kPi - pot.derivative_phase(which)) / 3.0 + 2.0 * kPi * k / 3.0;
}

StokesCurve trace_stokes_curve(const PotentialQuadratic& pot, int which, int k, const TraceOptions& opts) {
    if (which != 0 && which != 1)
        throw NumericalError(ErrorKind::Domain, "turning point index must be 0 or 1");
    if (!(opts.max_arclen > 0.0) || opts.step < 0.0 || !(opts.departure > 0.0))
        throw NumericalError(ErrorKind::Domain, "invalid tracing options");
    const auto tps = pot.turning_points();
    const ComplexValue tp = tps[which];
    const ComplexValue other = tps[1 - which];
    const double step0 = opts.step > 0.0 ? opts.step : 1e-3 * std::max(1.0, std::abs(other - tp));
    const double capture = 10.0 * step0;

    StokesCurve curve;
    curve.origin = tp;
    curve.origin_index = which;
    curve.direction_index = k;
    curve.initial_angle = stokes_initial_angle(pot, which, k);
    curve.points.push_back(tp);

    const ComplexValue heading = std::polar(1.0, curve.initial_angle);
    ComplexValue z = tp + opts.departure * heading;
    // Re S = 0 does not depend on the sign of the root, so any branch at the first point will do.
    const double arg0 = 0.5 * std::arg(pot(z));
    ComplexValue S = action(pot, Contour::segment(tp, z), arg0);
    BranchTracker tracker(pot, z, arg0);
    ComplexValue dir = heading;

    auto newton_project = [&](BranchTracker& tr, ComplexValue from_s, ComplexValue target, ComplexValue& s_out,
                              ComplexValue& z_out) {
        ComplexValue zc = target;
        for (int it = 0; it < 8; ++it) {
            BranchTracker trial = tr;
            const ComplexValue sc = from_s + segment_action(trial, zc);
            const ComplexValue root = trial.current().value;
            if (std::abs(sc.real()) <= 1e-14 * std::max(1.0, std::abs(sc))) {
                s_out = sc;
                z_out = zc;
                tr = trial;
                return true;
            }
            zc -= sc.real() * std::conj(root) / std::norm(root);
        }
        return false;
    };

    {
        ComplexValue s1, z1;
        if (!newton_project(tracker, S, z, s1, z1))
            throw NumericalError(ErrorKind::TracingStall, "could not place the first point on the Stokes line");
        S = s1;
        z = z1;
    }
    curve.points.push_back(z);
    curve.max_abs_re_action = std::abs(S.real());

    double arclen = std::abs(z - tp);
    double h = std::min(step0, 0.5 * std::abs(z - tp));
    int failures = 0;
    // Tangent angle and distance from the midpoint of the turning points, sampled at half the
    // arclength, for the extrapolated asymptotic angle.
    const ComplexValue centre = 0.5 * (tps[0] + tps[1]);
    double half_angle = 0.0, half_radius = 0.0;
    bool have_half = false;
    while (true) {
        const double clearance = pot.turning_point_distance(z);
        h = std::min(h, 0.5 * clearance);
        if (h < 1e-14)
            throw NumericalError(ErrorKind::TracingStall, "step collapsed while tracing a Stokes curve");

        const ComplexValue d0 = unit_tangent(tracker.current().value, dir);
        BranchTracker mid_tracker = tracker;
        const ComplexValue zm = z + 0.5 * h * d0;
        mid_tracker.advance(zm);
        const ComplexValue dm = unit_tangent(mid_tracker.current().value, d0);
        const ComplexValue predicted = z + h * dm;

        ComplexValue s_new, z_new;
        BranchTracker trial = tracker;
        const bool ok = newton_project(trial, S, predicted, s_new, z_new);
        if (!ok || std::abs(z_new - predicted) > 0.1 * h) {
            if (++failures >= 5)
                throw NumericalError(ErrorKind::TracingStall, "corrector failed 5 consecutive times");
            h *= 0.5;
            continue;
        }
        failures = 0;
        dir = (z_new - z) / std::abs(z_new - z);
        arclen += std::abs(z_new - z);
        z = z_new;
        S = s_new;
        tracker = trial;
        curve.points.push_back(z);
        curve.max_abs_re_action = std::max(curve.max_abs_re_action, std::abs(S.real()));

        if (std::abs(z - other) < capture) {
            curve.points.push_back(other);
            curve.terminal = StokesCurve::Terminal::ToTurningPoint;
            curve.target_index = 1 - which;
            break;
        }
        if (!have_half && arclen >= 0.5 * opts.max_arclen) {
            half_angle = std::arg(unit_tangent(tracker.current().value, dir));
            half_radius = std::abs(z - centre);
            have_half = true;
        }
        if (arclen >= opts.max_arclen) {
            curve.terminal = StokesCurve::Terminal::ToInfinity;
            // The tangent angle approaches its limit like 1/r^2; extrapolate from the two samples.
            const double end_angle = std::arg(unit_tangent(tracker.current().value, dir));
            const double r2 = std::abs(z - centre);
            double fitted = end_angle;
            if (have_half && r2 > 1.5 * half_radius) {
                const double change = std::remainder(end_angle - half_angle, 2.0 * kPi);
                fitted += change * half_radius * half_radius / (r2 * r2 - half_radius * half_radius);
            }
            curve.asymptotic_angle = reduce_angle(fitted);
            break;
        }
        h = std::min(step0, 1.5 * h);
    }
    return curve;
}

StokesCurve trace_stokes_curve(const PotentialQuadratic& pot, ComplexValue tp, int k, double max_arclen,
                               double step) {
    const auto tps = pot.turning_points();
    int which;
    if (std::abs(tp - tps[0]) < 1e-12)
        which = 0;
    else if (std::abs(tp - tps[1]) < 1e-12)
        which = 1;
    else
        throw NumericalError(ErrorKind::Domain, "tp is not a turning point of the potential");
    if (!(step > 0.0))
        throw NumericalError(ErrorKind::Domain, "step must be positive");
    return trace_stokes_curve(pot, which, k, TraceOptions{.max_arclen = max_arclen, .step = step});
}

StokesGraph build_stokes_graph(const PotentialQuadratic& pot, double max_arclen, double step) {
    std::vector<std::future<StokesCurve>> jobs;
    for (int which = 0; which < 2; ++which)
        for (int k = 0; k < 3; ++k)
            jobs.push_back(std::async(std::launch::async, [&pot, which, k, max_arclen, step] {
                return trace_stokes_curve(pot, which, k, TraceOptions{.max_arclen = max_arclen, .step = step});
            }));
    StokesGraph graph{pot, {}, {}, {}, false, {}};
    for (auto& j : jobs)
        graph.curves.push_back(j.get());
    std::sort(graph.curves.begin(), graph.curves.end(), [](const StokesCurve& a, const StokesCurve& b) {
        if (a.origin_index != b.origin_index)
            return a.origin_index < b.origin_index;
        return reduce_angle(a.initial_angle) < reduce_angle(b.initial_angle);
    });
    bool geometric = false;
    for (std::size_t i = 0; i < graph.curves.size(); ++i) {
        (graph.curves[i].origin_index == 0 ? graph.complex1 : graph.complex2).push_back(static_cast<int>(i));
        geometric = geometric || graph.curves[i].terminal == StokesCurve::Terminal::ToTurningPoint;
    }
    const bool analytic = std::abs(std::remainder(pot.psi(), 0.5 * kPi)) < 1e-12;
    if (analytic != geometric) {
        std::ostringstream os;
        os << "compound detection disagrees at psi=" << pot.psi() << ": analytic=" << analytic
           << " geometric=" << geometric << "; using geometric";
        graph.diagnostics.push_back(os.str());
    }
    graph.compound = geometric;
    return graph;
}

// ---------------------------------------------------------------- ray analysis

std::optional<RayExtremum> ray_extremum(double gamma, double psi) {
    if (!(gamma > 0.0 && gamma < 0.25 * kPi))
        throw NumericalError(ErrorKind::Domain, "gamma must lie in (0, pi/4)");
    if (!std::isfinite(psi) || std::abs(std::remainder(psi - gamma, 2.0 * kPi)) < 1e-15)
        throw NumericalError(ErrorKind::Domain, "psi must differ from gamma");
    const double den = std::sin(4.0 * gamma);
    const double tau0 = std::sin(3.0 * gamma + psi) / den;
    const double beta0 = std::sin(gamma - psi) / den;
    if (tau0 > 0.0 && beta0 > 0.0)
        return RayExtremum{tau0, beta0};
    return std::nullopt;
}

RayRegime ray_regime(double gamma, double psi) {
    psi = reduce_angle(psi);
    if (psi > 0.0 && psi < gamma)
        return RayRegime::Inner;
    if (psi > gamma && psi <= 2.0 * kPi - 3.0 * gamma)
        return RayRegime::Monotone;
    return RayRegime::Outer;
}

RayCrossingReport ray_crossing_report(const StokesGraph& graph, double psi, double gamma) {
    if (!(gamma > 0.0 && gamma < 0.25 * kPi))
        throw NumericalError(ErrorKind::Domain, "gamma must lie in (0, pi/4)");
    RayCrossingReport report;
    report.gamma = gamma;
    report.psi = psi;
    report.compound = graph.compound;
    report.extremum = ray_extremum(gamma, psi);

    const ComplexValue dir = std::polar(1.0, gamma - psi);
    const double exclusion = 1e-2;
    for (std::size_t c = 0; c < graph.curves.size(); ++c) {
        const auto& pts = graph.curves[c].points;
        std::vector<double> side(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j)
            side[j] = (std::conj(dir) * pts[j]).imag();
        auto record = [&](ComplexValue p) {
            const double tau = (std::conj(dir) * p).real();
            if (tau <= exclusion)
                return;
            auto& bucket = graph.curves[c].origin_index == 0 ? report.crossings_complex1 : report.crossings_complex2;
            if (graph.compound) {
                for (const auto& other : report.crossings_complex1)
                    if (std::abs(other.point - p) < 1e-6) return;
                for (const auto& other : report.crossings_complex2)
                    if (std::abs(other.point - p) < 1e-6) return;
            }
            bucket.push_back(RayCrossing{static_cast<int>(c), tau, p});
        };
        for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
            const double s0 = side[j], s1 = side[j + 1];
            if (s0 == 0.0 || s1 == 0.0) {
                if (s1 == 0.0 && j + 2 < pts.size()) {
                    // node j+1 lies on the ray: a crossing iff its neighbours are on opposite sides
                    const double after = side[j + 2];
                    if (s0 == 0.0 || after == 0.0)
                        throw NumericalError(ErrorKind::Ambiguity, "Stokes curve runs along the ray");
                    if ((s0 > 0.0) != (after > 0.0))
                        record(pts[j + 1]);
                }
                continue;
            }
            if ((s0 > 0.0) != (s1 > 0.0)) {
                const double t = s0 / (s0 - s1);
                record(pts[j] + t * (pts[j + 1] - pts[j]));
            }
        }
    }
    auto by_radius = [](const RayCrossing& a, const RayCrossing& b) { return a.radius < b.radius; };
    std::sort(report.crossings_complex1.begin(), report.crossings_complex1.end(), by_radius);
    std::sort(report.crossings_complex2.begin(), report.crossings_complex2.end(), by_radius);
    return report;
}

RayCrossingReport ray_crossing_report(double psi, double gamma, double max_arclen) {
    if (!(gamma > 0.0 && gamma < 0.25 * kPi))
        throw NumericalError(ErrorKind::Domain, "gamma must lie in (0, pi/4)");
    const auto pot = PotentialQuadratic::z_form(psi);
    auto graph = build_stokes_graph(pot, max_arclen, kCrossingTraceStep);
    // Near a compound configuration the coarse walk can be captured by the wrong turning point; the
    // disagreement with the analytic test shows up as a diagnostic, and the fine step resolves it.
    if (!graph.diagnostics.empty())
        graph = build_stokes_graph(pot, max_arclen);
    return ray_crossing_report(graph, psi, gamma);
}

bool crossing_counts_consistent(const RayCrossingReport& r) {
    switch (ray_regime(r.gamma, r.psi)) {
    case RayRegime::Inner: return r.count1() == 0 && r.count2() == 2;
    case RayRegime::Monotone: return r.count1() == 0 && (r.compound || r.count2() <= 1);
    case RayRegime::Outer: return r.count1() == 1 && (r.compound || r.count2() <= 1);
    }
    return false;
}

std::vector<RayCrossingReport> crossing_sweep(double gamma, int points_per_regime) {
    if (!(gamma > 0.0 && gamma < 0.25 * kPi))
        throw NumericalError(ErrorKind::Domain, "gamma must lie in (0, pi/4)");
    if (points_per_regime < 1)
        throw NumericalError(ErrorKind::Domain, "crossing_sweep needs at least one point per regime");
    const double edges[4] = {0.0, gamma, 2.0 * kPi - 3.0 * gamma, 2.0 * kPi};
    std::vector<double> psis;
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i < points_per_regime; ++i)
            psis.push_back(edges[r] + (i + 0.5) / points_per_regime * (edges[r + 1] - edges[r]));

    // Each report already traces its six curves in parallel, so a few workers suffice.
    std::vector<RayCrossingReport> out(psis.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < psis.size(); i = next++)
            out[i] = ray_crossing_report(psis[i], gamma);
    };
    const unsigned n_workers = std::max(1u, std::thread::hardware_concurrency() / 2);
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < n_workers; ++w) workers.push_back(std::async(std::launch::async, worker));
    for (auto& w : workers) w.get();
    return out;
}

// ---------------------------------------------------------------- polyline distance

namespace {

double point_segment_distance(ComplexValue p, ComplexValue a, ComplexValue b) {
    const ComplexValue d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

}  // namespace

double polyline_distance(const std::vector<ComplexValue>& a, const std::vector<ComplexValue>& b) {
    if (a.empty() || b.size() < 2)
        throw NumericalError(ErrorKind::Domain, "polyline_distance needs points and a polyline");
    const std::size_t nseg = b.size() - 1;
    auto seg_dist = [&](ComplexValue p, std::size_t j) { return point_segment_distance(p, b[j], b[j + 1]); };
    std::size_t hint = 0;
    double worst = 0.0;
    for (const auto& p : a) {
        // Windowed search around the previous match, widened while the optimum sits on the edge.
        std::size_t radius = 64;
        std::size_t best = hint;
        double best_d = seg_dist(p, hint);
        while (true) {
            const std::size_t lo = hint > radius ? hint - radius : 0;
            const std::size_t hi = std::min(nseg - 1, hint + radius);
            for (std::size_t j = lo; j <= hi; ++j) {
                const double d = seg_dist(p, j);
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
            const bool at_edge = (best == lo && lo > 0) || (best == hi && hi < nseg - 1);
            if (!at_edge || (lo == 0 && hi == nseg - 1))
                break;
            hint = best;
            radius *= 4;
        }
        hint = best;
        worst = std::max(worst, best_d);
    }
    return worst;
}

}  // namespace schrospec
