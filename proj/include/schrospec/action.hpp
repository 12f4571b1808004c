#pragma once

#include <array>
#include <utility>
#include <vector>

#include "schrospec/numerics.hpp"

namespace schrospec {

/// Quadratic potential in one of two normalizations:
///   Z_FORM  P(z) = e^{4 i psi} z (z - 1),  turning points {0, 1}
///   T_FORM  p(t) = t^2 - mu t,             turning points {0, mu}
class PotentialQuadratic {
public:
    enum class Kind { ZForm, TForm };

    static PotentialQuadratic z_form(double psi);
    static PotentialQuadratic t_form(ComplexValue mu);

    Kind kind() const { return kind_; }
    double psi() const { return psi_; }   // arg mu in [0, 2pi) for T_FORM
    ComplexValue mu() const { return mu_; }

    ComplexValue operator()(ComplexValue z) const { return lead_ * z * (z - second_); }
    ComplexValue derivative(ComplexValue z) const { return lead_ * (2.0 * z - second_); }
    std::array<ComplexValue, 2> turning_points() const { return {ComplexValue(0.0), second_}; }

    /// Unreduced argument of P'(tp) at turning point `which` (0 or 1), continuous in psi.
    double derivative_phase(int which) const;

    /// Distance from z to the nearest turning point.
    double turning_point_distance(ComplexValue z) const;

private:
    PotentialQuadratic(Kind kind, double psi, ComplexValue mu, ComplexValue lead, ComplexValue second)
        : kind_(kind), psi_(psi), mu_(mu), lead_(lead), second_(second) {}

    Kind kind_;
    double psi_;
    ComplexValue mu_;
    ComplexValue lead_;
    ComplexValue second_;
};

/// sqrt(P) with the continuously tracked argument of P; value^2 == P.
struct BranchTrackedValue {
    ComplexValue value;
    double sheet_phase;
};

inline constexpr double kTurningPointAvoidance = 1e-8;

/// Analytic continuation of sqrt(P) through a sequence of points. Steps are subdivided until the
/// argument of P changes by less than pi/2 per step.
class BranchTracker {
public:
    BranchTracker(const PotentialQuadratic& pot, ComplexValue start, double initial_arg);

    /// Moves to z from the current point, continuing the branch along the straight segment.
    BranchTrackedValue advance(ComplexValue z);
    /// Continues through a turning point: `z` lies on the far side of the vertex `tp`, and the
    /// argument of (z - tp) is taken to turn by the principal angle between the two directions.
    BranchTrackedValue pivot(ComplexValue tp, ComplexValue incoming_dir, ComplexValue z);

    BranchTrackedValue current() const;
    ComplexValue position() const { return z_; }

private:
    void step_to(ComplexValue z, int depth);

    const PotentialQuadratic* pot_;
    ComplexValue z_;
    ComplexValue p_;
    double phase_;
};

/// Samples of the continued sqrt(P) at every node of `path`. initial_arg selects the branch at the
/// first node (the square root whose argument is nearest to initial_arg).
std::vector<BranchTrackedValue> sqrt_branch_track(const PotentialQuadratic& pot, const Contour& path,
                                                  double initial_arg);

/// Integral of the continued sqrt(P) over `path`. The path may start or end at a turning point; an
/// interior node may sit on a turning point, in which case the branch is carried around it the short
/// way. When the first node is a turning point, initial_arg is the argument of sqrt(P) in the limit
/// along the first segment.
ComplexValue action(const PotentialQuadratic& pot, const Contour& path, double initial_arg);

/// Closed form of the integral of sqrt(zeta (1 - zeta)) from 1 to 1 + i tau (principal branches).
ComplexValue segment_integral_closed(double tau);

/// Principal complex arcsine, -i log(i w + sqrt(1 - w^2)).
ComplexValue arcsin_principal(ComplexValue w);

/// Real and imaginary parts of the integral of sqrt(t^2 - i t) over [0, x], principal branch, through
/// the explicit real integrands of each part.
std::pair<double, double> half_line_integral_split(double x);

}  // namespace schrospec
