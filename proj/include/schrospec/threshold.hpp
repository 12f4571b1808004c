#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "schrospec/numerics.hpp"

namespace schrospec {

/// psi_0 = pi/8 - 3 theta / 4, the potential angle paired with theta.
inline double psi0_of_theta(double theta) { return kPi / 8.0 - 0.75 * theta; }

/// F(theta) = Re[S1(1) - S5(Z0)] through the sine/cosine split of the half-line integral.
double F_theta(double theta);

/// F(theta) by integrating the branch-tracked action of e^{4 i psi0} z (z - 1) along [0, 1] and
/// [1, 1 + i tan theta].
double F_theta_action(double theta);

/// F(theta) from the closed-form segment integral.
double F_theta_closed(double theta);

struct PaperCheck {
    std::string id;        // "a" .. "h"
    std::string name;
    bool passed = false;
    double value = 0.0;    // the computed quantity
    double reference = 0.0;   // bound or expected value it is compared against
    // Second quantity for checks that compare two values (g); NaN otherwise.
    double value2 = std::numeric_limits<double>::quiet_NaN();
    double reference2 = std::numeric_limits<double>::quiet_NaN();
};

struct ThresholdReport {
    double theta0 = 0.0;
    Bracket enclosure{kPi / 10.0, kPi / 9.0};
    double f_lo = 0.0;     // F(enclosure.lo)
    double f_hi = 0.0;     // F(enclosure.hi)
    int iterations = 0;
    std::vector<std::pair<double, double>> f_samples;   // (theta, F) on 100 points over [0, pi/6)
    bool samples_increasing = false;
    std::vector<PaperCheck> paper_checks;
};

/// Bisection of F on [pi/10, pi/9] down to an enclosure narrower than tol.
ThresholdReport solve_theta0(double tol);

/// theta0 solved once at tol 1e-12 and shared afterwards.
double theta0_cached();

struct CompletenessVerdict {
    ComplexValue c;
    double margin = 0.0;            // pi/2 + theta0 - |arg c|
    bool complete_by_theorem = false;
    bool classical_sector = false;  // |arg c| < pi/2
};

CompletenessVerdict completeness_verdict(ComplexValue c);

/// The elementary identities and inequalities used to pin theta0 between pi/10 and pi/9.
std::vector<PaperCheck> verify_paper_bounds();

/// Re[S1(1) - S5(Z0)] at theta = pi/10 assembled from the explicit constants A, B and surds.
double F_pi10_algebraic();

}  // namespace schrospec
