#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "schrospec/spectrum.hpp"

using namespace schrospec;

namespace {

// Ai by its Maclaurin series, Ai(x) = Ai(0) f(x) + Ai'(0) g(x).
double airy_ai(double x) {
    const double ai0 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
    const double dai0 = -1.0 / (std::cbrt(3.0) * std::tgamma(1.0 / 3.0));
    const double x3 = x * x * x;
    double f = 1.0, g = x, a = 1.0, b = x;
    for (int k = 1; k < 80; ++k) {
        a *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
        b *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
        f += a;
        g += b;
    }
    return ai0 * f + dai0 * g;
}

// k-th zero of Ai (negated) by bisection on a bracket around the classical estimate.
double airy_zero(int k) {
    const double est = std::pow(3.0 * kPi * (4.0 * k - 1.0) / 8.0, 2.0 / 3.0);
    double lo = -(est + 0.2), hi = -(est - 0.2);
    REQUIRE(airy_ai(lo) * airy_ai(hi) < 0.0);
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double m = 0.5 * (lo + hi);
        if ((airy_ai(m) > 0.0) == (airy_ai(lo) > 0.0)) lo = m; else hi = m;
    }
    return -0.5 * (lo + hi);
}

SampledFunction sample(double X, std::size_t n, const std::function<ComplexValue(double)>& f) {
    SampledFunction s{X, std::vector<ComplexValue>(n)};
    for (std::size_t j = 0; j < n; ++j) s.values[j] = f(s.x(j));
    return s;
}

double max_abs_diff(const SampledFunction& a, const SampledFunction& b, std::size_t from, std::size_t to) {
    double m = 0.0;
    for (std::size_t j = from; j < to; ++j) m = std::max(m, std::abs(a.values[j] - b.values[j]));
    return m;
}

}  // namespace

TEST_CASE("Bohr-Sommerfeld constant") {
    CHECK(bs_constant(2.0) == doctest::Approx(kPi / 4.0).epsilon(1e-14));
    CHECK(bs_constant(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(bs_constant(2.0 / 3.0) == doctest::Approx(3.0 * kPi / 16.0).epsilon(1e-14));
    for (double a : {0.5, 2.0 / 3.0, 1.0, 1.5, 2.0, 3.0})
        CHECK(std::abs(bs_constant(a) - bs_constant_quadrature(a)) < 1e-12);
    CHECK_THROWS_AS(bs_constant(0.0), NumericalError);
}

TEST_CASE("asymptotic eigenvalues") {
    for (int n = 1; n <= 10; ++n) {
        CHECK(std::abs(t_asymptotic(n, 2.0) - (4.0 * n - 1.0)) < 1e-12 * n);
        CHECK(std::abs(t_asymptotic(n, 1.0) - std::pow((n - 0.25) * 1.5 * kPi, 2.0 / 3.0)) < 1e-12 * n);
    }
    CHECK(std::abs(t_asymptotic(1, 2.0 / 3.0) - 2.0) < 1e-14);
    CHECK_THROWS_AS(t_asymptotic(0, 1.0), NumericalError);
}

TEST_CASE("real spectrum: exactly solvable cases") {
    const double X2 = default_truncation(1.0, 2.0, 1.3 * t_asymptotic(10, 2.0));
    const auto harm = real_spectrum(2.0, 10, X2, 1e-12);
    REQUIRE(harm.size() == 10);
    for (int n = 1; n <= 10; ++n) CHECK(std::abs(harm[n - 1] - (4.0 * n - 1.0)) < 1e-8);

    const double X1 = default_truncation(1.0, 1.0, 1.3 * t_asymptotic(3, 1.0));
    const auto airy = real_spectrum(1.0, 3, X1, 1e-12);
    CHECK(std::abs(airy[0] - 2.33810741) < 1e-7);
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(airy[k - 1] - airy_zero(k)) < 1e-9);

    CHECK_THROWS_AS(real_spectrum(2.0, 10, 3.0, 1e-12), NumericalError);
}

TEST_CASE("real spectrum: asymptotic consistency and truncation robustness") {
    const double a = 2.0 / 3.0;
    const double X = default_truncation(1.0, a, 1.3 * t_asymptotic(20, a));
    const auto t = real_spectrum(a, 20, X, 1e-12);
    for (int n = 1; n <= 20; ++n) {
        const double dev = std::abs(t[n - 1] / t_asymptotic(n, a) - 1.0);
        if (n >= 5) CHECK(dev < 0.02);
        if (n >= 2) CHECK(dev < std::abs(t[n - 2] / t_asymptotic(n - 1, a) - 1.0));
        if (n >= 2) CHECK(t[n - 1] > t[n - 2]);
    }
    const auto wide = real_spectrum(a, 20, 1.3 * X, 1e-12);
    for (int n = 0; n < 20; ++n) CHECK(std::abs(wide[n] - t[n]) < 1e-8);

    // The determinant changes sign across each root.
    const OperatorSpec spec{1.0, a, X, 5};
    for (int n = 0; n < 20; ++n) {
        const double d = 1e-6 * t[n];
        CHECK(spectral_det(spec, t[n] - d).real() * spectral_det(spec, t[n] + d).real() < 0.0);
    }

    for (double alpha : {1.0, 2.0}) {
        const double Xa = default_truncation(1.0, alpha, 1.3 * t_asymptotic(20, alpha));
        const auto ta = real_spectrum(alpha, 20, Xa, 1e-12);
        const double d5 = std::abs(ta[4] / t_asymptotic(5, alpha) - 1.0);
        const double d20 = std::abs(ta[19] / t_asymptotic(20, alpha) - 1.0);
        if (alpha == 2.0) {
            // the asymptotic formula is exact for the oscillator
            CHECK(d5 < 1e-10);
            CHECK(d20 < 1e-10);
        } else {
            CHECK(d20 < d5);
        }
    }
}

TEST_CASE("spectral determinant") {
    const OperatorSpec osc = OperatorSpec::for_eigenvalues(1.0, 2.0, 3);
    CHECK(std::abs(spectral_det(osc, 3.0)) < 1e-7 * std::abs(spectral_det(osc, 2.0)));
    CHECK(std::abs(spectral_det(osc, 0.0)) > 1e-3 * std::abs(spectral_det(osc, 2.0)));

    const double a = 2.0 / 3.0;
    const ComplexValue c = std::polar(1.0, kPi / 3.0);
    const OperatorSpec spec = OperatorSpec::for_eigenvalues(c, a, 2);
    const double t1 = real_spectrum(a, 1, default_truncation(1.0, a, 1.3 * t_asymptotic(1, a)), 1e-13)[0];
    const ComplexValue scale = std::pow(c, 0.75);
    const double off = std::abs(spectral_det(spec, scale * (t1 + 0.1)));
    CHECK(std::abs(spectral_det(spec, scale * t1)) < 1e-10 * off);

    // mantissa * exp(log_scale) reproduces the plain value
    const auto scaled = spectral_det_scaled(spec, 1.0);
    CHECK(std::abs(scaled.value() - spectral_det(spec, 1.0)) < 1e-14 * std::abs(scaled.value()));

    CHECK_THROWS_AS(spectral_det(OperatorSpec{-1.0, a, 10.0, 11}, 1.0), NumericalError);
    CHECK_THROWS_AS(spectral_det(OperatorSpec{1.0, -1.0, 10.0, 11}, 1.0), NumericalError);
}

TEST_CASE("complex spectrum") {
    const double a = 2.0 / 3.0;
    const auto osc = complex_spectrum(OperatorSpec::for_eigenvalues(1.0, 2.0, 3), 3, 1e-11);
    for (int n = 1; n <= 3; ++n) CHECK(std::abs(osc.eigenvalues[n - 1] - (4.0 * n - 1.0)) < 1e-8);

    const double tol = 1e-11;
    const auto ci = complex_spectrum(OperatorSpec::for_eigenvalues(ComplexValue(0.0, 1.0), a, 3), 3, tol);
    for (const auto& l : ci.eigenvalues) CHECK(std::abs(std::arg(l) - 3.0 * kPi / 8.0) < 1e-6);

    std::vector<std::vector<double>> mods;
    for (double arg : {0.0, kPi / 4.0, kPi / 2.0, kPi / 2.0 + 0.3}) {
        const auto r = complex_spectrum(OperatorSpec::for_eigenvalues(std::polar(1.0, arg), a, 5), 5, tol);
        CHECK(r.scaling_verified);
        std::vector<double> m;
        for (std::size_t n = 0; n < r.eigenvalues.size(); ++n) {
            m.push_back(std::abs(r.eigenvalues[n]));
            CHECK(r.t_values[n] > 0.0);
            if (n > 0) CHECK(r.t_values[n] > r.t_values[n - 1]);
            CHECK(r.residuals[n] < tol);
            CHECK(r.scaling_deviation[n] < 1e-6);
            for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(r.eigenvalues[n] - r.eigenvalues[k]) > 1e3 * tol);
        }
        mods.push_back(m);
    }
    for (std::size_t i = 1; i < mods.size(); ++i)
        for (std::size_t n = 0; n < mods[i].size(); ++n)
            CHECK(std::abs(mods[i][n] - mods[0][n]) < 1e-6 * mods[0][n]);

    CHECK_THROWS_AS(complex_spectrum(OperatorSpec{1.0, a, 3.0, 11}, 10, tol), NumericalError);
}

TEST_CASE("s-numbers") {
    const auto s = s_numbers(OperatorSpec::for_eigenvalues(1.0, 2.0, 12), 12);
    REQUIRE(s.values.size() == 12);
    for (int n = 1; n <= 12; ++n) CHECK(std::abs(s.values[n - 1] - 1.0 / (4.0 * n - 1.0)) < 1e-10);
    CHECK(std::abs(s.fitted_slope - s.expected_slope) < 0.05);

    const double a = 2.0 / 3.0;
    const auto s1 = s_numbers(OperatorSpec::for_eigenvalues(1.0, a, 6), 6);
    const auto s4 = s_numbers(OperatorSpec::for_eigenvalues(4.0, a, 6), 6);
    for (int n = 0; n < 6; ++n) {
        CHECK(std::abs(s4.values[n] - std::pow(4.0, -0.75) * s1.values[n]) < 1e-8 * s4.values[n]);
        if (n > 0) CHECK(s1.values[n] < s1.values[n - 1]);
    }

    std::vector<double> power;
    for (int n = 1; n <= 30; ++n) power.push_back(3.0 * std::pow(n, -0.7));
    CHECK(std::abs(loglog_slope(power, 5, 30) + 0.7) < 1e-12);
}

TEST_CASE("resolvent") {
    const double a = 2.0 / 3.0;
    const ComplexValue c = std::polar(1.0, kPi / 3.0);
    const OperatorSpec spec{c, a, 10.0, 1001};

    // Gaussian bump: finite-difference residual of L y - f.
    const auto f = sample(spec.X, spec.grid_n, [](double x) { return std::exp(-(x - 3.0) * (x - 3.0)); });
    const auto r = apply_inverse(spec, f);
    CHECK(r.y.values[0] == 0.0);
    CHECK(r.wronskian_variation < 1e-6);
    const auto Ly = apply_operator_fd(spec, r.y);
    double fmax = 0.0;
    for (const auto& v : f.values) fmax = std::max(fmax, std::abs(v));
    CHECK(max_abs_diff(Ly, f, 2, spec.grid_n - 2) < 1e-5 * fmax);

    // Manufactured solution with compact support.
    auto bump = [](double x) {
        const double u = (x - 3.0) / 2.0;
        return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
    };
    auto bump_op = [&](double x) -> ComplexValue {
        const double u = (x - 3.0) / 2.0;
        if (std::abs(u) >= 1.0) return 0.0;
        const double q = 1.0 - u * u;
        // phi = exp(-1/q): phi_uu = phi (h^2 + h_u) with h = (log phi)_u
        const double h = -2.0 * u / (q * q);
        const double dh_du = -2.0 / (q * q) - 8.0 * u * u / (q * q * q);
        const double phi = std::exp(-1.0 / q);
        const double second = phi * (h * h + dh_du) / 4.0;
        return -second + c * std::pow(x, a) * phi;
    };
    const auto g = sample(spec.X, spec.grid_n, bump_op);
    const auto phi = sample(spec.X, spec.grid_n, bump);
    CHECK(max_abs_diff(apply_inverse(spec, g).y, phi, 0, spec.grid_n) < 1e-6);

    // Eigen relation: L^{-1} y_1 = y_1 / lambda_1 on a truncation long enough for y_1 to have decayed.
    const auto l1 = complex_spectrum(OperatorSpec::for_eigenvalues(c, a, 1), 1, 1e-12).eigenvalues[0];
    const OperatorSpec wide{c, a, 14.0, 1401};
    const auto y1 = eigenfunction(wide, l1);
    CHECK(std::abs(y1.values[0]) < 1e-10);
    const auto inv = apply_inverse(wide, y1);
    double err = 0.0;
    for (std::size_t j = 0; j < wide.grid_n; ++j) err = std::max(err, std::abs(inv.y.values[j] - y1.values[j] / l1));
    CHECK(err < 1e-6);

    CHECK_THROWS_AS(apply_inverse(spec, sample(5.0, 11, bump)), NumericalError);
}
