#include "schrospec/action.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace schrospec {

namespace {

double reduce_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    return a < 0.0 ? a + 2.0 * kPi : a;
}

double point_segment_distance(ComplexValue p, ComplexValue a, ComplexValue b) {
    const ComplexValue d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

}  // namespace

PotentialQuadratic PotentialQuadratic::z_form(double psi) {
    if (!std::isfinite(psi))
        throw NumericalError(ErrorKind::Domain, "psi must be finite");
    psi = reduce_angle(psi);
    return PotentialQuadratic(Kind::ZForm, psi, std::polar(1.0, psi), std::polar(1.0, 4.0 * psi), 1.0);
}

PotentialQuadratic PotentialQuadratic::t_form(ComplexValue mu) {
    if (!is_finite(mu) || mu == 0.0)
        throw NumericalError(ErrorKind::Domain, "T_FORM requires a finite mu != 0");
    return PotentialQuadratic(Kind::TForm, reduce_angle(std::arg(mu)), mu, 1.0, mu);
}

double PotentialQuadratic::derivative_phase(int which) const {
    const double base = kind_ == Kind::ZForm ? 4.0 * psi_ : psi_;
    return which == 0 ? base + kPi : base;
}

double PotentialQuadratic::turning_point_distance(ComplexValue z) const {
    return std::min(std::abs(z), std::abs(z - second_));
}

// ---------------------------------------------------------------- branch tracking

BranchTracker::BranchTracker(const PotentialQuadratic& pot, ComplexValue start, double initial_arg)
    : pot_(&pot), z_(start), p_(pot(start)) {
    if (p_ == 0.0)
        throw NumericalError(ErrorKind::TurningPointProximity, "branch tracking cannot start at a turning point");
    const double a = std::arg(p_);
    const double k = std::round((2.0 * initial_arg - a) / (2.0 * kPi));
    phase_ = a + 2.0 * kPi * k;
}

BranchTrackedValue BranchTracker::current() const {
    return {std::polar(std::sqrt(std::abs(p_)), 0.5 * phase_), phase_};
}

void BranchTracker::step_to(ComplexValue z, int depth) {
    const ComplexValue pz = (*pot_)(z);
    if (pz == 0.0)
        throw NumericalError(ErrorKind::TurningPointProximity, "branch continued onto a turning point");
    const double jump = std::arg(pz / p_);
    const double len = std::abs(z - z_);
    const double clearance = std::min(pot_->turning_point_distance(z), pot_->turning_point_distance(z_));
    if (std::abs(jump) >= 0.5 * kPi || len > 0.5 * clearance) {
        if (depth >= 40)
            throw NumericalError(ErrorKind::PhaseTracking, "subdivision depth 40 exceeded");
        const ComplexValue mid = 0.5 * (z + z_);
        step_to(mid, depth + 1);
        step_to(z, depth + 1);
        return;
    }
    phase_ += jump;
    z_ = z;
    p_ = pz;
}

BranchTrackedValue BranchTracker::advance(ComplexValue z) {
    if (z != z_)
        step_to(z, 0);
    return current();
}

BranchTrackedValue BranchTracker::pivot(ComplexValue tp, ComplexValue incoming_dir, ComplexValue z) {
    const ComplexValue back = -incoming_dir;
    const double turn = std::arg((z - tp) / back);
    if (std::abs(turn) > kPi - 1e-9)
        throw NumericalError(ErrorKind::PhaseTracking, "path reverses through a turning point; branch is ambiguous");
    const auto tps = pot_->turning_points();
    const ComplexValue other = std::abs(tps[0] - tp) < std::abs(tps[1] - tp) ? tps[1] : tps[0];
    const double near_part = std::arg(back / (z_ - tp)) + turn;
    const double far_part = std::arg((z - other) / (z_ - other));
    const ComplexValue pz = (*pot_)(z);
    if (pz == 0.0)
        throw NumericalError(ErrorKind::TurningPointProximity, "branch continued onto a turning point");
    // Snap to the representative of arg(pz / p_) consistent with the predicted turn.
    const double predicted = near_part + far_part;
    const double exact = std::arg(pz / p_);
    phase_ += exact + 2.0 * kPi * std::round((predicted - exact) / (2.0 * kPi));
    z_ = z;
    p_ = pz;
    return current();
}

std::vector<BranchTrackedValue> sqrt_branch_track(const PotentialQuadratic& pot, const Contour& path,
                                                  double initial_arg) {
    const auto nodes = path.nodes();
    const auto tps = pot.turning_points();
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        for (const auto& tp : tps)
            if (point_segment_distance(tp, nodes[i], nodes[i + 1]) < kTurningPointAvoidance)
                throw NumericalError(ErrorKind::TurningPointProximity, "path passes within 1e-8 of a turning point");
    BranchTracker tracker(pot, nodes[0], initial_arg);
    std::vector<BranchTrackedValue> out;
    out.reserve(nodes.size());
    out.push_back(tracker.current());
    for (std::size_t i = 1; i < nodes.size(); ++i)
        out.push_back(tracker.advance(nodes[i]));
    return out;
}

// ---------------------------------------------------------------- action

namespace {

constexpr int kActionNodes = 20;
constexpr int kGradingDepth = 20;
constexpr double kGradingFactor = 4.0;

struct Panel {
    double s0, s1;
};

// Parameter panels on [0, 1] for segment a->b: geometric grading toward endpoints that are turning
// points, then refinement until each panel is no longer than 3x its distance to the nearest turning
// point (a factor-4 graded mesh satisfies this exactly).
std::vector<Panel> segment_panels(const PotentialQuadratic& pot, ComplexValue a, ComplexValue b, bool start_tp,
                                  bool end_tp) {
    std::vector<double> cuts;
    const double len = std::abs(b - a);
    // Panels narrower than ~1e-12 relative to the coordinates would collapse Gauss nodes onto each
    // other; the skipped piece contributes O(width^{3/2}).
    const double min_width = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    auto graded = [&](double from, double to) {
        // cuts between from (a turning point) and to
        std::vector<double> c;
        double frac = 1.0;
        for (int k = 0; k < kGradingDepth; ++k) {
            frac /= kGradingFactor;
            if (frac * std::abs(to - from) * len < min_width)
                break;
            c.push_back(from + (to - from) * frac);
        }
        return c;
    };
    cuts.push_back(0.0);
    if (start_tp && end_tp) {
        auto lo = graded(0.0, 0.5);
        cuts.insert(cuts.end(), lo.rbegin(), lo.rend());
        cuts.push_back(0.5);
        auto hi = graded(1.0, 0.5);
        cuts.insert(cuts.end(), hi.begin(), hi.end());
    } else if (start_tp) {
        auto lo = graded(0.0, 1.0);
        cuts.insert(cuts.end(), lo.rbegin(), lo.rend());
    } else if (end_tp) {
        auto hi = graded(1.0, 0.0);
        cuts.insert(cuts.end(), hi.begin(), hi.end());
    }
    cuts.push_back(1.0);

    const auto tps = pot.turning_points();
    std::vector<Panel> out;
    std::vector<std::pair<Panel, int>> stack;
    for (std::size_t i = cuts.size() - 1; i > 0; --i)
        stack.push_back({{cuts[i - 1], cuts[i]}, 0});
    while (!stack.empty()) {
        auto [p, depth] = stack.back();
        stack.pop_back();
        const bool touches_tp = (start_tp && p.s0 == 0.0) || (end_tp && p.s1 == 1.0);
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& tp : tps)
            dist = std::min(dist, point_segment_distance(tp, a + p.s0 * (b - a), a + p.s1 * (b - a)));
        const double plen = (p.s1 - p.s0) * len;
        if (touches_tp || plen <= 3.0 * dist || depth >= 60) {
            out.push_back(p);
        } else {
            const double m = 0.5 * (p.s0 + p.s1);
            stack.push_back({{m, p.s1}, depth + 1});
            stack.push_back({{p.s0, m}, depth + 1});
        }
    }
    return out;
}

bool on_turning_point(const PotentialQuadratic& pot, ComplexValue z) {
    return pot.turning_point_distance(z) <= 1e-15 * std::max(1.0, std::abs(z));
}

}  // namespace

ComplexValue action(const PotentialQuadratic& pot, const Contour& path, double initial_arg) {
    const auto nodes = path.nodes();
    const auto tps = pot.turning_points();
    const GaussRule& rule = gauss_rule(kActionNodes);

    std::optional<BranchTracker> tracker;
    ComplexValue total = 0.0;
    ComplexValue pending_pivot_dir = 0.0;
    ComplexValue pending_pivot_tp = 0.0;
    bool pivot_pending = false;
    if (!on_turning_point(pot, nodes[0]))
        tracker.emplace(pot, nodes[0], initial_arg);

    for (std::size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
        const ComplexValue a = nodes[seg], b = nodes[seg + 1];
        const bool start_tp = on_turning_point(pot, a);
        const bool end_tp = on_turning_point(pot, b);
        for (const auto& tp : tps) {
            const bool endpoint = (start_tp && std::abs(tp - a) <= 1e-15 * std::max(1.0, std::abs(a))) ||
                                  (end_tp && std::abs(tp - b) <= 1e-15 * std::max(1.0, std::abs(b)));
            if (!endpoint && point_segment_distance(tp, a, b) < kTurningPointAvoidance)
                throw NumericalError(ErrorKind::TurningPointProximity, "path passes within 1e-8 of a turning point");
        }

        for (const Panel& p : segment_panels(pot, a, b, start_tp, end_tp)) {
            const ComplexValue lo = a + p.s0 * (b - a);
            const ComplexValue hi = a + p.s1 * (b - a);
            const ComplexValue mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            ComplexValue sum = 0.0;
            for (int i = 0; i < kActionNodes; ++i) {
                const ComplexValue z = mid + half * rule.nodes[i];
                BranchTrackedValue v;
                if (!tracker) {
                    tracker.emplace(pot, z, initial_arg);
                    v = tracker->current();
                } else if (pivot_pending) {
                    v = tracker->pivot(pending_pivot_tp, pending_pivot_dir, z);
                    pivot_pending = false;
                } else {
                    v = tracker->advance(z);
                }
                sum += rule.weights[i] * v.value;
            }
            total += sum * half;
        }

        if (seg + 2 < nodes.size()) {
            if (end_tp) {
                pivot_pending = true;
                pending_pivot_tp = b;
                pending_pivot_dir = (b - a) / std::abs(b - a);
            } else {
                tracker->advance(b);
            }
        }
    }
    if (!is_finite(total))
        throw NumericalError(ErrorKind::Domain, "action evaluated to a non-finite value");
    return total;
}

// ---------------------------------------------------------------- closed forms

ComplexValue arcsin_principal(ComplexValue w) {
    const ComplexValue i(0.0, 1.0);
    return -i * std::log(i * w + std::sqrt(1.0 - w * w));
}

ComplexValue segment_integral_closed(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw NumericalError(ErrorKind::Domain, "segment_integral_closed requires tau >= 0");
    const ComplexValue w(1.0, 2.0 * tau);
    return 0.25 * w * std::sqrt(ComplexValue(tau * tau, -tau)) + arcsin_principal(w) / 8.0 - kPi / 16.0;
}

std::pair<double, double> half_line_integral_split(double x) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw NumericalError(ErrorKind::Domain, "half_line_integral_split requires x >= 0");
    if (x == 0.0)
        return {0.0, 0.0};
    // t = s^2 removes the sqrt(t) behaviour at the origin; both integrands become smooth in s.
    const double upper = std::sqrt(x);
    const int panels = static_cast<int>(std::ceil(4.0 * upper)) + 1;
    const GaussRule& rule = gauss_rule(20);
    double re = 0.0, im = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = upper * p / panels, hi = upper * (p + 1) / panels;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double sre = 0.0, sim = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double s = mid + half * rule.nodes[i];
            const double s2 = s * s;
            const double root = std::sqrt(s2 * s2 + 1.0) + s2;
            sre += rule.weights[i] * 2.0 * s2 * std::sqrt(0.5 * root);
            sim += rule.weights[i] * 2.0 * s2 / std::sqrt(2.0 * root);
        }
        re += sre * half;
        im -= sim * half;
    }
    return {re, im};
}

}  // namespace schrospec
