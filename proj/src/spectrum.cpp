#include "schrospec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace schrospec {

namespace {

// The potential c x^alpha is only Holder at the origin for non-integer alpha; fixed steps there.
constexpr double kOriginZone = 1e-2;
constexpr double kOriginStep = 1e-4;
constexpr double kShootTol = 1e-12;
constexpr double kSeedDecay = 20.0;
constexpr double kScanTol = 1e-8;

ComplexValue principal_power(ComplexValue z, double p) { return std::exp(p * std::log(z)); }

// A ray x = r e^{i phi} from the origin; phi = 0 is the real half-line.
struct Ray {
    double phi = 0.0;
    ComplexValue at(double r) const { return std::polar(r, phi); }
    ComplexValue power(double r, double alpha) const { return std::polar(std::pow(r, alpha), alpha * phi); }
};

// Ray on which c x^alpha is real and positive. The subdominant solution at +infinity on the real
// axis is also subdominant along it, and shooting there avoids the exponential amplification of
// rounding errors that the real axis suffers for |arg c| near pi.
Ray shooting_ray(const OperatorSpec& spec) { return Ray{-std::arg(spec.c) / (spec.alpha + 2.0)}; }

// sqrt(c x^alpha - lambda) at x = r e^{i phi}, continued from sqrt(c) x^{alpha/2} at large r.
ComplexValue decaying_root(ComplexValue c, double alpha, const Ray& ray, double r, ComplexValue lambda) {
    const ComplexValue lead = std::sqrt(c) * ray.power(r, 0.5 * alpha);
    return lead * std::sqrt(1.0 - lambda / (c * ray.power(r, alpha)));
}

OdeField schrodinger_field(ComplexValue c, double alpha, ComplexValue lambda, const Ray& ray) {
    const ComplexValue rot = std::polar(1.0, alpha * ray.phi);
    return [c, alpha, lambda, rot](ComplexValue z, std::span<const ComplexValue> y, std::span<ComplexValue> dy) {
        dy[0] = y[1];
        dy[1] = (c * rot * std::pow(std::abs(z), alpha) - lambda) * y[0];
    };
}

// Seed (log-amplitude, y, y') at x = X e^{i phi} for the solution decaying at infinity: amplitude
// x^{-alpha/4} exp(-(2/(alpha+2)) sqrt(c) x^{alpha/2+1}), slope from the Liouville-Green form.
struct Seed {
    State state;
    double log_scale;
};

Seed decaying_seed(const OperatorSpec& spec, ComplexValue lambda, const Ray& ray) {
    const double a = spec.alpha, X = spec.X;
    const ComplexValue e = (2.0 / (a + 2.0)) * std::sqrt(spec.c) * ray.power(X, 0.5 * a + 1.0);
    const ComplexValue mantissa = ray.power(X, -0.25 * a) * std::polar(1.0, -e.imag());
    const ComplexValue q = spec.c * ray.power(X, a) - lambda;
    const ComplexValue dq = spec.c * a * ray.power(X, a - 1.0);
    const ComplexValue logderiv = -decaying_root(spec.c, a, ray, X, lambda) - dq / (4.0 * q);
    return Seed{{mantissa, mantissa * logderiv}, -e.real()};
}

double renormalize(State& y) {
    const double s = std::max(std::abs(y[0]), std::abs(y[1]));
    if (s > 0.0 && std::isfinite(s)) {
        y[0] /= s;
        y[1] /= s;
        return std::log(s);
    }
    return 0.0;
}

// Integrates between radii from and to along the ray, using fixed steps inside the origin zone.
void shoot_interval(const OdeField& field, State& y, const Ray& ray, double from, double to, double tol) {
    if (from == to)
        return;
    const double lo = std::min(from, to), hi = std::max(from, to);
    const bool forward = to > from;
    auto run = [&](double a, double b, bool fixed) {
        if (a == b)
            return;
        OdeOptions opts{.tol = tol};
        if (fixed)
            opts.fixed_step = kOriginStep;
        y = integrate_ode_contour(field, std::move(y), Contour::segment(ray.at(a), ray.at(b)), opts);
    };
    if (hi <= kOriginZone) {
        run(from, to, true);
    } else if (lo >= kOriginZone) {
        run(from, to, false);
    } else if (forward) {
        run(from, kOriginZone, true);
        run(kOriginZone, to, false);
    } else {
        run(from, kOriginZone, false);
        run(kOriginZone, to, true);
    }
}

double bs_factor(double alpha) {
    return std::sqrt(kPi) * (alpha + 2.0) * gamma_fn(1.0 / alpha + 0.5) / gamma_fn(1.0 / alpha);
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw NumericalError(ErrorKind::Domain, "alpha must be positive");
}

}  // namespace

void OperatorSpec::validate() const {
    if (!is_finite(c) || c == 0.0 || !(std::abs(std::arg(c)) < kPi))
        throw NumericalError(ErrorKind::Domain, "c must be nonzero with |arg c| < pi");
    check_alpha(alpha);
    if (!(X > kOriginZone) || !std::isfinite(X))
        throw NumericalError(ErrorKind::Domain, "truncation X must be finite and exceed 1e-2");
    if (grid_n < 5)
        throw NumericalError(ErrorKind::Domain, "grid needs at least 5 samples");
}

OperatorSpec OperatorSpec::for_eigenvalues(ComplexValue c, double alpha, int n_max, std::size_t grid_n) {
    check_alpha(alpha);
    if (n_max < 1)
        throw NumericalError(ErrorKind::Domain, "n_max must be at least 1");
    OperatorSpec spec{c, alpha, 1.0, grid_n};
    spec.X = default_truncation(c, alpha, 1.3 * t_asymptotic(n_max, alpha));
    spec.validate();
    return spec;
}

ComplexValue ScaledValue::value() const {
    if (mantissa == 0.0)
        return 0.0;
    const double log_mag = std::log(std::abs(mantissa)) + log_scale;
    if (log_mag > std::log(1e300))
        throw NumericalError(ErrorKind::OverflowGuard, "renormalized amplitude exceeds 1e300");
    return mantissa * std::exp(log_scale);
}

// ---------------------------------------------------------------- Bohr-Sommerfeld

double bs_constant(double alpha) {
    check_alpha(alpha);
    return gamma_fn(1.0 / alpha) * std::sqrt(kPi) / ((alpha + 2.0) * gamma_fn(1.0 / alpha + 0.5));
}

double bs_constant_quadrature(double alpha) {
    check_alpha(alpha);
    // Both ends are graded geometrically (factor 4, 20 levels): sqrt-type singularity at 1, and a
    // Holder zeta^alpha at 0.
    std::vector<double> cuts = {0.0};
    std::vector<double> lower;
    for (int k = 20; k >= 1; --k)
        lower.push_back(0.5 * std::pow(4.0, -k));
    cuts.insert(cuts.end(), lower.begin(), lower.end());
    cuts.push_back(0.5);
    for (int k = 1; k <= 20; ++k)
        cuts.push_back(1.0 - 0.5 * std::pow(4.0, -k));
    cuts.push_back(1.0);
    const GaussRule& rule = gauss_rule(20);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double mid = 0.5 * (cuts[p] + cuts[p + 1]), half = 0.5 * (cuts[p + 1] - cuts[p]);
        double sum = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double z = mid + half * rule.nodes[i];
            sum += rule.weights[i] * std::sqrt(std::max(0.0, 1.0 - std::pow(z, alpha)));
        }
        total += sum * half;
    }
    return total;
}

double t_asymptotic(int n, double alpha) {
    check_alpha(alpha);
    if (n < 1)
        throw NumericalError(ErrorKind::Domain, "n must be at least 1");
    return std::pow((n - 0.25) * bs_factor(alpha), 2.0 * alpha / (alpha + 2.0));
}

double default_truncation(ComplexValue c, double alpha, double t_max) {
    check_alpha(alpha);
    if (!(t_max > 0.0))
        throw NumericalError(ErrorKind::Domain, "t_max must be positive");
    const ComplexValue lambda = principal_power(c, 2.0 / (alpha + 2.0)) * t_max;
    const double x_tp = std::pow(std::abs(lambda) / std::abs(c), 1.0 / alpha);
    // Grow X until Re of the action beyond the turning point, along the shooting ray, reaches kSeedDecay.
    const Ray ray{-std::arg(c) / (alpha + 2.0)};
    const ComplexValue dir = ray.at(1.0);
    const GaussRule& rule = gauss_rule(16);
    double X = std::max(1.5 * x_tp, 1.0);
    for (int it = 0; it < 200; ++it) {
        double decay = 0.0;
        const int panels = 16;
        for (int p = 0; p < panels; ++p) {
            const double a = x_tp + (X - x_tp) * p / panels, b = x_tp + (X - x_tp) * (p + 1) / panels;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int i = 0; i < 16; ++i)
                decay += half * rule.weights[i] * (dir * decaying_root(c, alpha, ray, mid + half * rule.nodes[i], lambda)).real();
        }
        if (decay >= kSeedDecay)
            return X;
        X *= 1.1;
    }
    throw NumericalError(ErrorKind::Domain, "could not find a truncation radius");
}

// ---------------------------------------------------------------- spectral determinant

namespace {

ScaledValue shoot_to_origin(const OperatorSpec& spec, ComplexValue lambda, double ode_tol) {
    spec.validate();
    if (!is_finite(lambda))
        throw NumericalError(ErrorKind::Domain, "lambda must be finite");
    const Ray ray = shooting_ray(spec);
    const OdeField field = schrodinger_field(spec.c, spec.alpha, lambda, ray);
    Seed seed = decaying_seed(spec, lambda, ray);
    State y = std::move(seed.state);
    double log_scale = seed.log_scale + renormalize(y);
    double x = spec.X;
    while (x > 0.0) {
        const double next = x > kOriginZone ? std::max(kOriginZone, x - 1.0) : 0.0;
        shoot_interval(field, y, ray, x, next, ode_tol);
        log_scale += renormalize(y);
        x = next;
    }
    if (!is_finite(y[0]))
        throw NumericalError(ErrorKind::OverflowGuard, "shooting produced a non-finite value");
    return ScaledValue{y[0], log_scale};
}

}  // namespace

ScaledValue spectral_det_scaled(const OperatorSpec& spec, ComplexValue lambda) {
    return shoot_to_origin(spec, lambda, kShootTol);
}

ComplexValue spectral_det(const OperatorSpec& spec, ComplexValue lambda) {
    return spectral_det_scaled(spec, lambda).value();
}

// ---------------------------------------------------------------- real spectrum

std::vector<double> real_spectrum(double alpha, int n_max, double X, double tol) {
    check_alpha(alpha);
    if (n_max < 1)
        throw NumericalError(ErrorKind::Domain, "n_max must be at least 1");
    if (!(tol > 0.0))
        throw NumericalError(ErrorKind::Domain, "tolerance must be positive");
    const double t_top = t_asymptotic(n_max, alpha);
    if (!(X > 1.5 * std::pow(t_top, 1.0 / alpha)))
        throw NumericalError(ErrorKind::Domain, "X must exceed 1.5 x the turning point of t_n_max");

    const OperatorSpec spec{ComplexValue(1.0, 0.0), alpha, X, 5};
    auto det = [&](double t) { return spectral_det(spec, t).real(); };
    // Signs on the scan grid only need a coarse integration; brackets are re-checked at full accuracy.
    auto det_coarse = [&](double t) { return shoot_to_origin(spec, t, kScanTol).value().real(); };

    // Grid spacing: 1/40 of the local asymptotic eigenvalue gap.
    const double factor = bs_factor(alpha);
    const double expo = 2.0 * alpha / (alpha + 2.0);
    auto local_step = [&](double t) {
        const double n = std::max(1.0, std::pow(t, 1.0 / expo) / factor + 0.25);
        const double gap = t_asymptotic(static_cast<int>(n) + 1, alpha) - t_asymptotic(static_cast<int>(n), alpha);
        return gap / 40.0;
    };

    std::vector<double> roots;
    double t = 0.5 * t_asymptotic(1, alpha);
    double ft = det_coarse(t);
    const double t_end = 1.3 * t_top;
    while (static_cast<int>(roots.size()) < n_max && t < t_end) {
        const double step = local_step(t);
        const double t_next = t + step;
        const double f_next = det_coarse(t_next);
        if ((ft > 0.0) != (f_next > 0.0)) {
            double lo = t, hi = t_next;
            double flo = det(lo), fhi = det(hi);
            if (flo == 0.0) {
                roots.push_back(lo);
            } else if (fhi == 0.0) {
                roots.push_back(hi);
            } else {
                if ((flo > 0.0) == (fhi > 0.0)) {
                    lo -= step;
                    hi += step;
                }
                roots.push_back(find_root_real(det, Bracket(lo, hi), tol));
            }
        }
        t = t_next;
        ft = f_next;
    }
    if (static_cast<int>(roots.size()) < n_max) {
        std::ostringstream os;
        os << "found " << roots.size() << " of " << n_max << " eigenvalues below t = " << t_end;
        throw NumericalError(ErrorKind::BracketMiss, os.str());
    }
    return roots;
}

// ---------------------------------------------------------------- complex spectrum

SpectrumResult complex_spectrum(const OperatorSpec& spec, int n_max, double tol) {
    spec.validate();
    if (n_max < 1)
        throw NumericalError(ErrorKind::Domain, "n_max must be at least 1");
    const double a = spec.alpha;
    const ComplexValue scale = principal_power(spec.c, 2.0 / (a + 2.0));
    const double x_tp = std::pow(std::abs(scale) * t_asymptotic(n_max, a) / std::abs(spec.c), 1.0 / a);
    if (!(spec.X > 1.5 * x_tp))
        throw NumericalError(ErrorKind::Domain, "X must exceed 1.5 x the turning point of lambda_n_max");

    const double t_ref_top = 1.3 * t_asymptotic(n_max, a);
    const std::vector<double> t_real = real_spectrum(a, n_max, default_truncation(1.0, a, t_ref_top), 1e-13);

    auto det = [&](ComplexValue lambda) { return spectral_det(spec, lambda); };
    SpectrumResult out;
    for (int n = 1; n <= n_max; ++n) {
        const double ta = t_asymptotic(n, a);
        const ComplexRoot root = find_root_complex(det, scale * ta, tol);
        for (const auto& prev : out.eigenvalues)
            if (std::abs(prev - root.root) < std::max(tol, 1e-6) * std::max(1.0, std::abs(root.root))) {
                std::ostringstream os;
                os << "eigenvalue " << n << " converged onto " << prev;
                throw NumericalError(ErrorKind::RootCollision, os.str());
            }
        out.eigenvalues.push_back(root.root);
        out.residuals.push_back(root.residual / root.scale);
    }

    std::vector<std::size_t> order(out.eigenvalues.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return (out.eigenvalues[i] / scale).real() < (out.eigenvalues[j] / scale).real();
    });
    SpectrumResult sorted;
    sorted.scaling_verified = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const ComplexValue lam = out.eigenvalues[order[k]];
        const ComplexValue t = lam / scale;
        const double dev = std::abs(t - t_real[k]) / t_real[k];
        sorted.eigenvalues.push_back(lam);
        sorted.t_values.push_back(t.real());
        sorted.residuals.push_back(out.residuals[order[k]]);
        sorted.asymptotic_deviation.push_back(std::abs(t.real() / t_asymptotic(static_cast<int>(k) + 1, a) - 1.0));
        sorted.scaling_deviation.push_back(dev);
        sorted.scaling_verified = sorted.scaling_verified && dev < 1e-6;
    }
    return sorted;
}

// ---------------------------------------------------------------- Green's function

namespace {

struct GridSolution {
    std::vector<ComplexValue> y, dy;
};

// Inward shooting of the decaying solution at lambda, sampled on the grid. Samples are stored with
// a common scale so the largest |y| is 1.
GridSolution decaying_on_grid(const OperatorSpec& spec, ComplexValue lambda) {
    const std::size_t n = spec.grid_n;
    const double h = spec.X / static_cast<double>(n - 1);
    const Ray ray;
    const OdeField field = schrodinger_field(spec.c, spec.alpha, lambda, ray);
    Seed seed = decaying_seed(spec, lambda, ray);
    State y = std::move(seed.state);
    std::vector<ComplexValue> ys(n), dys(n);
    std::vector<double> logs(n);
    double log_scale = seed.log_scale + renormalize(y);
    ys[n - 1] = y[0];
    dys[n - 1] = y[1];
    logs[n - 1] = log_scale;
    for (std::size_t j = n - 1; j > 0; --j) {
        const double from = j * h, to = (j - 1) * h;
        shoot_interval(field, y, ray, from, to, kShootTol);
        log_scale += renormalize(y);
        ys[j - 1] = y[0];
        dys[j - 1] = y[1];
        logs[j - 1] = log_scale;
    }
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
        if (ys[j] != 0.0)
            top = std::max(top, logs[j] + std::log(std::abs(ys[j])));
    GridSolution out{std::vector<ComplexValue>(n), std::vector<ComplexValue>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::exp(logs[j] - top);
        out.y[j] = ys[j] * w;
        out.dy[j] = dys[j] * w;
    }
    return out;
}

// Outward solution with u(0) = 0, u'(0) = 1, unscaled.
GridSolution regular_on_grid(const OperatorSpec& spec, ComplexValue lambda) {
    const std::size_t n = spec.grid_n;
    const double h = spec.X / static_cast<double>(n - 1);
    const Ray ray;
    const OdeField field = schrodinger_field(spec.c, spec.alpha, lambda, ray);
    State y = {0.0, 1.0};
    GridSolution out{std::vector<ComplexValue>(n), std::vector<ComplexValue>(n)};
    out.y[0] = 0.0;
    out.dy[0] = 1.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        shoot_interval(field, y, ray, j * h, (j + 1) * h, kShootTol);
        out.y[j + 1] = y[0];
        out.dy[j + 1] = y[1];
    }
    return out;
}

// Running integral from x_0 with the four-point (cubic) rule on each interval.
std::vector<ComplexValue> cumulative_integral(const std::vector<ComplexValue>& g, double h) {
    const std::size_t n = g.size();
    std::vector<ComplexValue> c(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        ComplexValue piece;
        if (i == 0)
            piece = 9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3];
        else if (i + 2 == n)
            piece = 9.0 * g[n - 1] + 19.0 * g[n - 2] - 5.0 * g[n - 3] + g[n - 4];
        else
            piece = -g[i - 1] + 13.0 * g[i] + 13.0 * g[i + 1] - g[i + 2];
        c[i + 1] = c[i] + piece * (h / 24.0);
    }
    return c;
}

void check_grid(const OperatorSpec& spec, const SampledFunction& f) {
    if (f.size() != spec.grid_n || std::abs(f.X - spec.X) > 1e-12 * spec.X)
        throw NumericalError(ErrorKind::Domain, "sampled function does not live on the operator grid");
    for (const auto& v : f.values)
        if (!is_finite(v))
            throw NumericalError(ErrorKind::Domain, "sampled function has non-finite values");
}

}  // namespace

SampledFunction eigenfunction(const OperatorSpec& spec, ComplexValue lambda) {
    spec.validate();
    GridSolution v = decaying_on_grid(spec, lambda);
    return SampledFunction{spec.X, std::move(v.y)};
}

ResolventResult apply_inverse(const OperatorSpec& spec, const SampledFunction& f) {
    spec.validate();
    check_grid(spec, f);
    const double a = spec.alpha;
    const double growth = std::abs(std::sqrt(spec.c)) * (2.0 / (a + 2.0)) * std::pow(spec.X, 0.5 * a + 1.0);
    if (growth > 600.0)
        throw NumericalError(ErrorKind::Domain, "X too large for an unscaled Green's function");

    const std::size_t n = spec.grid_n;
    const double h = spec.X / static_cast<double>(n - 1);
    const GridSolution u = regular_on_grid(spec, 0.0);
    const GridSolution v = decaying_on_grid(spec, 0.0);

    std::vector<ComplexValue> w(n);
    double product_scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = v.y[j] * u.dy[j] - v.dy[j] * u.y[j];
        product_scale = std::max(product_scale, std::abs(v.y[j]) * std::abs(u.dy[j]));
    }
    ResolventResult out;
    out.wronskian = w[n / 2];
    if (std::abs(out.wronskian) < 1e-10 * product_scale)
        throw NumericalError(ErrorKind::WronskianDegenerate, "Wronskian of u and v vanishes");
    for (const auto& wj : w)
        out.wronskian_variation = std::max(out.wronskian_variation, std::abs(wj - out.wronskian) / std::abs(out.wronskian));

    std::vector<ComplexValue> uf(n), vf(n);
    for (std::size_t j = 0; j < n; ++j) {
        uf[j] = u.y[j] * f.values[j];
        vf[j] = v.y[j] * f.values[j];
    }
    const auto U = cumulative_integral(uf, h);
    const auto Vc = cumulative_integral(vf, h);
    out.y.X = spec.X;
    out.y.values.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        out.y.values[j] = (v.y[j] * U[j] + u.y[j] * (Vc[n - 1] - Vc[j])) / out.wronskian;
    out.y.values[0] = 0.0;
    return out;
}

SampledFunction apply_operator_fd(const OperatorSpec& spec, const SampledFunction& y) {
    spec.validate();
    check_grid(spec, y);
    const std::size_t n = y.size();
    const double h = y.step();
    SampledFunction out{y.X, std::vector<ComplexValue>(n, 0.0)};
    for (std::size_t j = 2; j + 2 < n; ++j) {
        const auto& v = y.values;
        const ComplexValue d2 = (-v[j - 2] + 16.0 * v[j - 1] - 30.0 * v[j] + 16.0 * v[j + 1] - v[j + 2]) / (12.0 * h * h);
        out.values[j] = -d2 + spec.c * std::pow(y.x(j), spec.alpha) * v[j];
    }
    return out;
}

// ---------------------------------------------------------------- s-numbers

double loglog_slope(const std::vector<double>& values, int n_lo, int n_hi) {
    if (n_lo < 1 || n_hi <= n_lo || n_hi > static_cast<int>(values.size()))
        throw NumericalError(ErrorKind::Domain, "invalid fit range");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = n_hi - n_lo + 1;
    for (int n = n_lo; n <= n_hi; ++n) {
        const double x = std::log(static_cast<double>(n)), y = std::log(values[n - 1]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

SNumbers s_numbers(const OperatorSpec& spec, int n_max) {
    const SpectrumResult spectrum = complex_spectrum(spec, n_max, 1e-11);
    SNumbers out;
    for (const auto& lam : spectrum.eigenvalues)
        out.values.push_back(1.0 / std::abs(lam));
    out.expected_slope = -2.0 * spec.alpha / (spec.alpha + 2.0);
    if (n_max >= 2)
        out.fitted_slope = loglog_slope(out.values, std::max(1, n_max / 4), n_max);
    return out;
}

}  // namespace schrospec
