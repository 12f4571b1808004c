#include "schrospec/threshold.hpp"

#include <cmath>

#include "schrospec/action.hpp"

namespace schrospec {

namespace {

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta < kPi / 6.0))
        throw NumericalError(ErrorKind::Domain, "theta must lie in [0, pi/6)");
}

PaperCheck make_check(std::string id, std::string name, bool passed, double value, double reference) {
    return PaperCheck{std::move(id), std::move(name), passed, value, reference};
}

double constant_A() { return std::atan(std::sqrt(std::sqrt(5.0) / 2.0)); }

double constant_B() {
    const double s5 = std::sqrt(5.0);
    return -0.5 * std::log(1.0 + 4.0 * s5 / 5.0 - 4.0 * std::sqrt((s5 + 2.0) / 10.0));
}

}  // namespace

double F_theta(double theta) {
    check_theta(theta);
    const double psi0 = psi0_of_theta(theta);
    if (theta == 0.0)
        return -std::sin(2.0 * psi0) * kPi / 8.0;
    const auto [re, im] = half_line_integral_split(std::tan(theta));
    return -std::sin(2.0 * psi0) * (kPi / 8.0 + im) + std::cos(2.0 * psi0) * re;
}

double F_theta_action(double theta) {
    check_theta(theta);
    const double psi0 = psi0_of_theta(theta);
    const auto pot = PotentialQuadratic::z_form(psi0);
    // On (0, 1) the root is e^{2i psi0} i sqrt(x (1 - x)); on the vertical segment above z = 1 it is
    // e^{2i psi0} i sqrt(zeta (1 - zeta)) with the principal root, whose argument starts at -pi/4.
    const ComplexValue s1 = action(pot, Contour::segment(0.0, 1.0), 2.0 * psi0 + 0.5 * kPi);
    ComplexValue s5 = 0.0;
    if (theta > 0.0)
        s5 = action(pot, Contour::segment(1.0, ComplexValue(1.0, std::tan(theta))), 2.0 * psi0 + 0.25 * kPi);
    return (s1 - s5).real();
}

double F_theta_closed(double theta) {
    check_theta(theta);
    const double psi0 = psi0_of_theta(theta);
    const ComplexValue rot = std::polar(1.0, 2.0 * psi0) * ComplexValue(0.0, 1.0);
    return (rot * (kPi / 8.0 - segment_integral_closed(std::tan(theta)))).real();
}

ThresholdReport solve_theta0(double tol) {
    if (!(tol > 0.0))
        throw NumericalError(ErrorKind::Domain, "tolerance must be positive");
    double lo = kPi / 10.0, hi = kPi / 9.0;
    double flo = F_theta(lo), fhi = F_theta(hi);
    if (!(flo < 0.0) || !(fhi > 0.0))
        throw NumericalError(ErrorKind::SignAnomaly, "F must be negative at pi/10 and positive at pi/9");
    ThresholdReport report;
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fm = F_theta(mid);
        ++report.iterations;
        if (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else if (fm > 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = hi = mid;
            break;
        }
    }
    report.theta0 = 0.5 * (lo + hi);
    if (lo < hi)
        report.enclosure = Bracket(lo, hi);
    report.f_lo = flo;
    report.f_hi = fhi;

    constexpr int kSamples = 100;
    report.samples_increasing = true;
    for (int i = 0; i < kSamples; ++i) {
        const double theta = i * (kPi / 6.0) / kSamples;
        const double f = F_theta(theta);
        if (!report.f_samples.empty() && !(f > report.f_samples.back().second))
            report.samples_increasing = false;
        report.f_samples.emplace_back(theta, f);
    }
    report.paper_checks = verify_paper_bounds();
    return report;
}

double theta0_cached() {
    static const double value = solve_theta0(1e-12).theta0;
    return value;
}

CompletenessVerdict completeness_verdict(ComplexValue c) {
    if (!is_finite(c) || c == 0.0)
        throw NumericalError(ErrorKind::Domain, "c must be finite and nonzero");
    const double a = std::abs(std::arg(c));
    if (!(a < kPi))
        throw NumericalError(ErrorKind::Domain, "c must not lie on the negative real axis");
    CompletenessVerdict v;
    v.c = c;
    v.margin = 0.5 * kPi + theta0_cached() - a;
    v.complete_by_theorem = v.margin > 0.0;
    v.classical_sector = a < 0.5 * kPi;
    return v;
}

double F_pi10_algebraic() {
    const double s5 = std::sqrt(5.0);
    const double A = constant_A(), B = constant_B();
    return ((A - 1.5 * kPi) * (s5 - 1.0) / 4.0 + std::sqrt(s5 / 10.0) * (3.0 - s5) +
            B * std::sqrt((5.0 + s5) / 8.0)) /
           8.0;
}

std::vector<PaperCheck> verify_paper_bounds() {
    std::vector<PaperCheck> out;
    const double s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);

    {
        const double ds = std::abs(std::sin(kPi / 10.0) - (s5 - 1.0) / 4.0);
        const double dc = std::abs(std::cos(kPi / 10.0) - std::sqrt(10.0 + 2.0 * s5) / 4.0);
        const double d = std::max(ds, dc);
        out.push_back(make_check("a", "sin and cos of pi/10 in surds", d < 1e-14, d, 1e-14));
    }
    {
        const double d = std::abs(std::tan(kPi / 12.0) - (2.0 - s3));
        out.push_back(make_check("b", "tan(pi/12) = 2 - sqrt(3)", d < 1e-14, d, 1e-14));
    }
    {
        const double q = (2.0 - s3) * (81.0 / (8.0 * std::sqrt(2.0 * kPi)) - 1.0 / s3);
        const double unsimplified =
            std::tan(kPi / 12.0) * (kPi / 8.0 * 3.0 / std::sqrt(2.0) * std::pow(9.0 / kPi, 1.5) - 1.0 / s3);
        const bool ok = q < 1.0 && std::abs(q - unsimplified) < 1e-13;
        out.push_back(make_check("c", "quotient bound at theta = pi/9", ok, q, 1.0));
    }
    const auto [re9, im9] = half_line_integral_split(std::tan(kPi / 9.0));
    {
        const double bound_tan = std::sqrt(2.0) / 3.0 * std::pow(std::tan(kPi / 9.0), 1.5);
        const double bound = std::sqrt(2.0) / 3.0 * std::pow(kPi / 9.0, 1.5);
        const bool ok = re9 > bound_tan && bound_tan > bound;
        out.push_back(make_check("d", "Re integral at tan(pi/9) lower bound", ok, re9, bound));
    }
    {
        const double ratio = im9 / re9;
        const double sector = std::tan(-kPi / 4.0 + kPi / 18.0);
        const bool ok = ratio < sector && sector < -1.0 / s3 &&
                        std::abs(sector + std::tan(7.0 * kPi / 36.0)) < 1e-14;
        out.push_back(make_check("e", "Im/Re at tan(pi/9) below -1/sqrt(3)", ok, ratio, -1.0 / s3));
    }
    const double A = constant_A(), B = constant_B();
    {
        const double tau = std::tan(kPi / 10.0);
        const ComplexValue as = arcsin_principal(ComplexValue(1.0, 2.0 * tau));
        const double dA = std::abs(as.real() - A), dB = std::abs(as.imag() - B);
        const double dtau = std::abs(tau - std::sqrt((5.0 - 2.0 * s5) / 5.0));
        const bool ok = dA < 1e-14 && dB < 1e-14 && dtau < 1e-15 && A < kPi / 6.0 + kPi / 10.0 &&
                        2.0 * B < std::abs(std::log(0.185)) && std::abs(std::log(0.185)) < 1.7;
        out.push_back(make_check("f", "arcsin(1 + 2i tan(pi/10)) = A + iB with 2B < 1.7", ok, 2.0 * B, 1.7));
    }
    {
        const double g1 = 4.0 * std::sqrt(2.0 / s5) * (A - 1.5 * kPi) + 8.0 * (1.0 - 1.0 / s5);
        const double g2 = 2.0 * B * std::pow(s5 + 1.0, 1.5);
        auto check = make_check("g", "final inequalities g1 < -10 and g2 < 10", g1 < -10.0 && g2 < 10.0, g1, -10.0);
        check.value2 = g2;
        check.reference2 = 10.0;
        out.push_back(check);
    }
    {
        const double alg = F_pi10_algebraic();
        const double g1 = 4.0 * std::sqrt(2.0 / s5) * (A - 1.5 * kPi) + 8.0 * (1.0 - 1.0 / s5);
        const double g2 = 2.0 * B * std::pow(s5 + 1.0, 1.5);
        const double factored = std::sqrt(s5 / 2.0) / (32.0 * (s5 + 1.0)) * (g1 + g2);
        const double f = F_theta(kPi / 10.0);
        const double d = std::max(std::abs(alg - f), std::abs(factored - f));
        out.push_back(make_check("h", "algebraic F(pi/10) matches quadrature and is negative", d < 1e-12 && f < 0.0,
                                 alg, f));
    }
    return out;
}

}  // namespace schrospec
