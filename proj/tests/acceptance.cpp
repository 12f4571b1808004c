// Acceptance run: one line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "schrospec/action.hpp"
#include "schrospec/spectrum.hpp"
#include "schrospec/stokes.hpp"
#include "schrospec/threshold.hpp"

using namespace schrospec;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Ai from its Maclaurin series and the first zero by bisection.
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

double first_airy_zero() {
    double lo = -2.5, hi = -2.2;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double m = 0.5 * (lo + hi);
        if ((airy_ai(m) > 0.0) == (airy_ai(lo) > 0.0)) lo = m; else hi = m;
    }
    return -0.5 * (lo + hi);
}

// Extremum of Re S along the ray arg z = gamma - psi inside [lo, hi]: golden section on Re S, then
// bisection on the sign of d Re S / d tau.
double numerical_extremum(double gamma, double psi, double lo, double hi) {
    const auto pot = PotentialQuadratic::z_form(psi);
    const ComplexValue dir = std::polar(1.0, gamma - psi);
    const double start = 0.5 * lo;
    const double arg0 = 0.5 * std::arg(pot(start * dir));
    auto re_s = [&](double tau) { return action(pot, Contour::segment(start * dir, tau * dir), arg0).real(); };
    auto deriv = [&](double tau) {
        const auto track = sqrt_branch_track(pot, Contour::segment(start * dir, tau * dir), arg0);
        return (dir * track.back().value).real();
    };
    const double sign = deriv(lo) > 0.0 ? 1.0 : -1.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = sign * re_s(c), fd = sign * re_s(d);
    while (b - a > 1e-6 * (hi - lo)) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = sign * re_s(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = sign * re_s(d);
        }
    }
    a = std::max(lo, a - 1e-4 * (hi - lo));
    b = std::min(hi, b + 1e-4 * (hi - lo));
    const double da = deriv(a);
    if (!(da * deriv(b) < 0.0)) throw std::runtime_error("extremum oracle lost its bracket");
    while (b - a > 1e-13 * std::max(1.0, b)) {
        const double m = 0.5 * (a + b);
        if ((deriv(m) > 0.0) == (da > 0.0)) a = m; else b = m;
    }
    return 0.5 * (a + b);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

}  // namespace

int main() {
    criterion(1, "theta0 enclosure", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = solve_theta0(1e-10);
        const double secs = seconds_since(t0);
        const bool ok = r.theta0 > kPi / 10.0 && r.theta0 < kPi / 9.0 && r.enclosure.width() < 1e-10 &&
                        F_theta(kPi / 10.0) < 0.0 && F_theta(kPi / 9.0) > 0.0 && secs < 1.0;
        return Outcome{ok, fmt("theta0 = %.15f, width %.1e, solve %.3f s", r.theta0, r.enclosure.width(), secs)};
    });

    criterion(2, "F(0) = -sqrt(2) pi / 16", [] {
        const double err = std::abs(F_theta(0.0) + std::sqrt(2.0) * kPi / 16.0);
        return Outcome{err < 1e-12 && std::abs(F_theta(0.0) + 0.277680183634898) < 1e-12,
                       fmt("F(0) = %.16f, error %.1e", F_theta(0.0), err)};
    });

    criterion(3, "three routes to F agree", [] {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double th = i * (kPi / 6.0) / 100.0;
            const double a = F_theta(th), b = F_theta_action(th), c = F_theta_closed(th);
            worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
        }
        const double secs = seconds_since(t0);
        return Outcome{worst < 1e-11 && secs < 5.0, fmt("max disagreement %.1e on 100 points", worst)};
    });

    criterion(4, "threshold bound checks", [] {
        const auto checks = verify_paper_bounds();
        int passed = 0;
        for (const auto& c : checks) passed += c.passed;
        const bool ok = checks.size() == 8 && passed == 8 && checks[2].value < 1.0 && checks[6].value < -10.0 &&
                        checks[6].value2 < 10.0;
        return Outcome{ok, fmt("%g/8 pass; quotient %.4f, final pair %.3f", passed, checks[2].value, checks[6].value) +
                               fmt(" and %.3f", checks[6].value2)};
    });

    criterion(5, "exactly solvable spectra", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto harm = real_spectrum(2.0, 10, default_truncation(1.0, 2.0, 1.3 * t_asymptotic(10, 2.0)), 1e-12);
        double worst = 0.0;
        for (int n = 1; n <= 10; ++n) worst = std::max(worst, std::abs(harm[n - 1] - (4.0 * n - 1.0)));
        const double t1 = real_spectrum(1.0, 1, default_truncation(1.0, 1.0, 1.3 * t_asymptotic(1, 1.0)), 1e-12)[0];
        const double oracle = first_airy_zero();
        const double secs = seconds_since(t0);
        const bool ok = worst < 1e-8 && std::abs(t1 - oracle) < 1e-7 && std::abs(t1 - 2.33810741) < 1e-7 && secs < 10.0;
        return Outcome{ok, fmt("oscillator max error %.1e; Airy t1 = %.12f vs series zero %.12f", worst, t1, oracle)};
    });

    criterion(6, "asymptotic law at alpha = 2/3", [] {
        const double a = 2.0 / 3.0;
        const auto t = real_spectrum(a, 20, default_truncation(1.0, a, 1.3 * t_asymptotic(20, a)), 1e-12);
        double worst = 0.0;
        for (int n = 5; n <= 20; ++n) worst = std::max(worst, std::abs(t[n - 1] / t_asymptotic(n, a) - 1.0));
        const double d5 = std::abs(t[4] / t_asymptotic(5, a) - 1.0), d20 = std::abs(t[19] / t_asymptotic(20, a) - 1.0);
        return Outcome{worst < 0.02 && d20 < d5, fmt("max deviation n>=5 %.2e; n=5 %.2e, n=20 %.2e", worst, d5, d20)};
    });

    criterion(7, "complex scaling law", [] {
        const double a = 2.0 / 3.0;
        const auto t = real_spectrum(a, 5, default_truncation(1.0, a, 1.3 * t_asymptotic(5, a)), 1e-13);
        double worst = 0.0, worst_arg = 0.0;
        for (double arg : {kPi / 4.0, kPi / 2.0, kPi / 2.0 + 0.3}) {
            const ComplexValue c = std::polar(1.0, arg);
            const auto r = complex_spectrum(OperatorSpec::for_eigenvalues(c, a, 5), 5, 1e-11);
            for (int n = 0; n < 5; ++n) {
                const ComplexValue l = r.eigenvalues[n];
                worst = std::max(worst, std::abs(l / std::pow(c, 0.75) - t[n]) / t[n]);
                worst_arg = std::max(worst_arg, std::abs(std::arg(l) - 0.75 * arg));
            }
        }
        return Outcome{worst < 1e-6 && worst_arg < 1e-6,
                       fmt("max |lambda/c^(3/4) - t|/t %.1e, max arg error %.1e", worst, worst_arg)};
    });

    criterion(8, "crossing classification and extremum", [] {
        const double g = kPi / 8.0;
        const auto sweep = crossing_sweep(g, 50);
        int consistent = 0, extrema = 0;
        double worst = 0.0;
        for (const auto& r : sweep) {
            consistent += crossing_counts_consistent(r);
            if (!r.extremum) continue;
            const double tau0 = r.extremum->tau0;
            double lo = 0.5 * tau0, hi = 1.5 * tau0;
            if (r.count2() == 2) {
                lo = r.crossings_complex2[0].radius;
                hi = r.crossings_complex2[1].radius;
            }
            worst = std::max(worst, std::abs(numerical_extremum(g, r.psi, lo, hi) - tau0));
            ++extrema;
        }
        const bool ok = consistent == static_cast<int>(sweep.size()) && sweep.size() == 150 && worst < 1e-8;
        return Outcome{ok, fmt("%g/150 consistent; extremum error %.1e over %g rays", consistent, worst, extrema)};
    });

    criterion(9, "resolvent", [] {
        const OperatorSpec spec{std::polar(1.0, kPi / 3.0), 2.0 / 3.0, 10.0, 1001};
        SampledFunction f{spec.X, std::vector<ComplexValue>(spec.grid_n)};
        for (std::size_t j = 0; j < spec.grid_n; ++j) f.values[j] = std::exp(-(f.x(j) - 3.0) * (f.x(j) - 3.0));
        const auto r = apply_inverse(spec, f);
        const auto Ly = apply_operator_fd(spec, r.y);
        double res = 0.0;
        for (std::size_t j = 2; j + 2 < spec.grid_n; ++j) res = std::max(res, std::abs(Ly.values[j] - f.values[j]));
        const bool ok = res < 1e-5 && r.y.values[0] == ComplexValue(0.0) && r.wronskian_variation < 1e-6;
        return Outcome{ok, fmt("residual %.1e, |y(0)| = %g, Wronskian variation %.1e", res, std::abs(r.y.values[0]),
                               r.wronskian_variation)};
    });

    criterion(10, "s-number decay", [] {
        const int n_max = 40;
        const auto s = s_numbers(OperatorSpec::for_eigenvalues(1.0, 2.0 / 3.0, n_max), n_max);
        // plain least squares of log s_n on log n over [10, 40]
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (int n = 10; n <= n_max; ++n, ++m) {
            const double x = std::log(n), y = std::log(s.values[n - 1]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        return Outcome{std::abs(slope + 0.5) < 0.05, fmt("slope %.4f (expected -0.5)", slope)};
    });

    criterion(11, "verify is deterministic", [] {
        const auto dir = std::filesystem::temp_directory_path();
        const auto a = dir / "schrospec_acceptance_verify_1.csv", b = dir / "schrospec_acceptance_verify_2.csv";
        auto run = [](const std::filesystem::path& out) {
            // identical argv for both runs; only the shell redirection differs
            const std::string cmd = std::string(SCHROSPEC_TOOL) + " verify > " + out.string();
            const int s = std::system(cmd.c_str());
            return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
        };
        const int ca = run(a), cb = run(b);
        const std::string ra = read_file(a), rb = read_file(b);
        std::filesystem::remove(a);
        std::filesystem::remove(b);
        const bool ok = ca == 0 && cb == 0 && !ra.empty() && ra == rb;
        return Outcome{ok, fmt("exit codes %g, %g; %g bytes", ca, cb, static_cast<double>(ra.size())) +
                               (ra == rb ? ", identical" : ", reports differ")};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
