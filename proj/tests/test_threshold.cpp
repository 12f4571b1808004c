#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "schrospec/action.hpp"
#include "schrospec/threshold.hpp"

using namespace schrospec;

namespace {

// F from the action difference written through the complex half-line integral itself, evaluated
// by plain composite Gauss after t = s^2.
double F_direct(double theta) {
    const ComplexValue I(0.0, 1.0);
    const double psi0 = kPi / 8.0 - 0.75 * theta;
    ComplexValue j = 0.0;
    if (theta > 0.0)
        j = gauss_legendre_composite([&](ComplexValue s) { return 2.0 * s * s * std::sqrt(s * s - I); },
                                     Contour::segment(0.0, std::sqrt(std::tan(theta))), 8, 20);
    const ComplexValue rot = std::polar(1.0, 2.0 * psi0);
    const ComplexValue s1 = rot * I * kPi / 8.0;
    const ComplexValue s5 = -rot * j;
    return (s1 - s5).real();
}

}  // namespace

TEST_CASE("F at the ends of [0, pi/6)") {
    CHECK(std::abs(F_theta(0.0) + std::sqrt(2.0) * kPi / 16.0) < 1e-12);
    CHECK(std::abs(F_theta(0.0) + 0.2776801836348979) < 1e-15);
    // Limit at pi/6: Re of the half-line integral up to 1/sqrt(3), a positive number.
    const double re_end = half_line_integral_split(1.0 / std::sqrt(3.0)).first;
    CHECK(re_end > 0.0);
    CHECK(std::abs(F_theta(std::nextafter(kPi / 6.0, 0.0)) - re_end) < 1e-7);
    CHECK(F_theta(kPi / 10.0) < 0.0);
    CHECK(F_theta(kPi / 9.0) > 0.0);
    CHECK_THROWS_AS(F_theta(-0.01), NumericalError);
    CHECK_THROWS_AS(F_theta(kPi / 6.0), NumericalError);
}

TEST_CASE("three routes to F agree, and match a direct quadrature") {
    double worst = 0.0, worst_direct = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double theta = i * (kPi / 6.0) / 100.0;
        const double a = F_theta(theta), b = F_theta_action(theta), c = F_theta_closed(theta);
        worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
        worst_direct = std::max(worst_direct, std::abs(a - F_direct(theta)));
    }
    CHECK(worst < 1e-11);
    CHECK(worst_direct < 1e-11);
}

TEST_CASE("solve_theta0") {
    const auto r = solve_theta0(1e-10);
    CHECK(r.theta0 > kPi / 10.0);
    CHECK(r.theta0 < kPi / 9.0);
    CHECK(r.enclosure.width() < 1e-10);
    CHECK(r.f_lo < 0.0);
    CHECK(r.f_hi > 0.0);
    CHECK(std::abs(F_theta(r.theta0)) < 1e-9);
    CHECK(r.samples_increasing);
    REQUIRE(r.f_samples.size() == 100);
    int sign_changes = 0;
    for (std::size_t i = 1; i < r.f_samples.size(); ++i)
        if ((r.f_samples[i].second > 0.0) != (r.f_samples[i - 1].second > 0.0)) ++sign_changes;
    CHECK(sign_changes == 1);

    const auto finer = solve_theta0(5e-11);
    CHECK(std::abs(finer.theta0 - r.theta0) < 1e-10);
    // Reference value from an independent 30-digit evaluation of the same equation.
    CHECK(std::abs(theta0_cached() - 0.318939790428533926) < 1e-12);
    CHECK_THROWS_AS(solve_theta0(0.0), NumericalError);
}

TEST_CASE("completeness verdict") {
    const double t0 = theta0_cached();
    const auto vi = completeness_verdict(ComplexValue(0.0, 1.0));
    CHECK(vi.complete_by_theorem);
    CHECK(std::abs(vi.margin - t0) < 1e-15);
    CHECK_FALSE(vi.classical_sector);
    CHECK(completeness_verdict(1.0).classical_sector);
    CHECK(completeness_verdict(1.0).complete_by_theorem);
    CHECK_FALSE(completeness_verdict(std::polar(1.0, kPi / 2.0 + kPi / 9.0)).complete_by_theorem);
    CHECK(completeness_verdict(std::polar(1.0, -(kPi / 2.0 + kPi / 10.0))).complete_by_theorem);
    CHECK_THROWS_AS(completeness_verdict(-1.0), NumericalError);
    CHECK_THROWS_AS(completeness_verdict(0.0), NumericalError);
}

TEST_CASE("threshold bound checks") {
    const auto checks = verify_paper_bounds();
    REQUIRE(checks.size() == 8);
    const char* ids = "abcdefgh";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        CHECK(checks[i].id == std::string(1, ids[i]));
        CHECK_MESSAGE(checks[i].passed, checks[i].name);
    }
    CHECK(checks[1].value < 1e-15);
    CHECK(checks[2].value < 1.0);
    CHECK(checks[6].value < -10.0);
    CHECK(checks[6].value2 < 10.0);
    CHECK(std::abs(F_pi10_algebraic() - F_theta(kPi / 10.0)) < 1e-12);
}
