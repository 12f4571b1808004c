#include "schrospec/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace schrospec {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::StepUnderflow: return "step underflow";
    case ErrorKind::NoSignChange: return "no sign change";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::TurningPointProximity: return "turning-point proximity";
    case ErrorKind::PhaseTracking: return "phase tracking";
    case ErrorKind::TracingStall: return "tracing stall";
    case ErrorKind::Ambiguity: return "ambiguous crossing";
    case ErrorKind::SignAnomaly: return "sign anomaly";
    case ErrorKind::BracketMiss: return "bracket miss";
    case ErrorKind::OverflowGuard: return "overflow guard";
    case ErrorKind::RootCollision: return "root collision";
    case ErrorKind::WronskianDegenerate: return "degenerate wronskian";
    }
    return "error";
}

Contour::Contour(std::vector<ComplexValue> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2)
        throw NumericalError(ErrorKind::Domain, "contour needs at least two nodes");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!is_finite(nodes_[i]))
            throw NumericalError(ErrorKind::Domain, "contour node is not finite");
        if (i > 0 && nodes_[i] == nodes_[i - 1])
            throw NumericalError(ErrorKind::Domain, "consecutive contour nodes coincide");
    }
}

double Contour::arclength() const {
    double total = 0.0;
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        total += std::abs(nodes_[i] - nodes_[i - 1]);
    return total;
}

Bracket::Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi))
        throw NumericalError(ErrorKind::Domain, "bracket requires lo < hi");
}

// ---------------------------------------------------------------- gamma

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw NumericalError(ErrorKind::Domain, "gamma_fn requires a finite x > 0");
    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> p = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    if (x < 0.5)
        return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    const double z = x - 1.0;
    double a = p[0];
    const double t = z + g + 0.5;
    for (int i = 1; i < 9; ++i)
        a += p[i] / (z + i);
    // t^(z+1/2) split in two halves keeps the power finite up to x ~ 340.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * kPi) * half * (half * std::exp(-t)) * a;
}

// ---------------------------------------------------------------- Gauss-Legendre

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

constexpr int kMaxGaussNodes = 64;

}  // namespace

const GaussRule& gauss_rule(int n) {
    if (n < 1 || n > kMaxGaussNodes)
        throw NumericalError(ErrorKind::Domain, "gauss_rule supports 1..64 nodes");
    static const std::vector<GaussRule> table = [] {
        std::vector<GaussRule> t(kMaxGaussNodes + 1);
        for (int k = 1; k <= kMaxGaussNodes; ++k)
            t[k] = build_rule(k);
        return t;
    }();
    return table[n];
}

ComplexValue gauss_legendre(const ComplexIntegrand& f, const Contour& seg, int n) {
    if (seg.size() != 2)
        throw NumericalError(ErrorKind::Domain, "gauss_legendre integrates over a single segment");
    if (n < 2)
        throw NumericalError(ErrorKind::Domain, "gauss_legendre requires n >= 2");
    const GaussRule& rule = gauss_rule(n);
    const ComplexValue a = seg.front(), b = seg.back();
    const ComplexValue mid = 0.5 * (a + b), half = 0.5 * (b - a);
    ComplexValue sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

ComplexValue gauss_legendre_composite(const ComplexIntegrand& f, const Contour& seg, int panels, int n) {
    if (panels < 1)
        throw NumericalError(ErrorKind::Domain, "composite rule requires at least one panel");
    const ComplexValue a = seg.front(), b = seg.back();
    ComplexValue sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const ComplexValue lo = a + (b - a) * (static_cast<double>(p) / panels);
        const ComplexValue hi = a + (b - a) * (static_cast<double>(p + 1) / panels);
        sum += gauss_legendre(f, Contour::segment(lo, hi), n);
    }
    return sum;
}

// ---------------------------------------------------------------- Dormand-Prince 5(4)

namespace {

namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

class DormandPrince {
public:
    DormandPrince(const OdeField& field, std::size_t dim)
        : field_(field), k1_(dim), k2_(dim), k3_(dim), k4_(dim), k5_(dim), k6_(dim), k7_(dim), tmp_(dim),
          next_(dim) {}

    // One trial step from z along unit direction u with arclength h. Returns the scaled error norm;
    // next_ holds the 5th-order solution and k7_ its derivative (FSAL).
    double trial(ComplexValue z, ComplexValue u, double h, const State& y, double tol) {
        using namespace dp;
        const std::size_t n = y.size();
        const ComplexValue hu = h * u;
        auto stage = [&](double c, std::vector<ComplexValue>& k) { field_(z + c * hu, tmp_, k); };
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + hu * (a21 * k1_[i]);
        stage(c2, k2_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + hu * (a31 * k1_[i] + a32 * k2_[i]);
        stage(c3, k3_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + hu * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
        stage(c4, k4_);
        for (std::size_t i = 0; i < n; ++i)
            tmp_[i] = y[i] + hu * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
        stage(c5, k5_);
        for (std::size_t i = 0; i < n; ++i)
            tmp_[i] = y[i] + hu * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] + a65 * k5_[i]);
        stage(1.0, k6_);
        for (std::size_t i = 0; i < n; ++i)
            next_[i] = y[i] + hu * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] + a76 * k6_[i]);
        field_(z + hu, next_, k7_);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const ComplexValue e =
                hu * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
            const double sc = tol * std::max({1.0, std::abs(y[i]), std::abs(next_[i])});
            err = std::max(err, std::abs(e) / sc);
        }
        return err;
    }

    void init_derivative(ComplexValue z, const State& y) { field_(z, y, k1_); }
    void accept(State& y) {
        y.swap(next_);
        k1_.swap(k7_);
    }
    const std::vector<ComplexValue>& derivative() const { return k1_; }

private:
    const OdeField& field_;
    std::vector<ComplexValue> k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_;
    State next_;
};

void check_state(const State& y) {
    for (const auto& v : y)
        if (!is_finite(v))
            throw NumericalError(ErrorKind::Domain, "ODE state became non-finite");
}

}  // namespace

State integrate_ode_contour(const OdeField& field, State y, const Contour& path, const OdeOptions& opts,
                            OdeStats* stats) {
    if (!(opts.tol > 0.0))
        throw NumericalError(ErrorKind::Domain, "ODE tolerance must be positive");
    if (y.empty())
        throw NumericalError(ErrorKind::Domain, "ODE state is empty");
    check_state(y);
    const double total = path.arclength();
    const double min_step = 1e-14 * total;
    DormandPrince rk(field, y.size());
    OdeStats local;
    double h = 0.0;
    double err_prev = 1e-4;

    const auto nodes = path.nodes();
    for (std::size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
        const ComplexValue a = nodes[seg];
        const double len = std::abs(nodes[seg + 1] - a);
        const ComplexValue u = (nodes[seg + 1] - a) / len;
        rk.init_derivative(a, y);

        if (opts.fixed_step > 0.0) {
            const auto steps = static_cast<std::size_t>(std::ceil(len / opts.fixed_step));
            const double hf = len / static_cast<double>(steps);
            for (std::size_t k = 0; k < steps; ++k) {
                rk.trial(a + (k * hf) * u, u, hf, y, opts.tol);
                rk.accept(y);
                ++local.accepted;
            }
            check_state(y);
            continue;
        }

        if (h <= 0.0) {
            double ny = 0.0, nf = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                ny = std::max(ny, std::abs(y[i]));
                nf = std::max(nf, std::abs(rk.derivative()[i]));
            }
            h = (nf > 0.0) ? 0.01 * std::max(ny, 1.0) / nf : 0.01 * len;
            h = std::min(h, 0.1 * len);
        }
        h = std::min(h, opts.max_step);

        double s = 0.0;
        while (s < len) {
            bool last = false;
            if (s + h >= len * (1.0 - 1e-13)) {
                h = len - s;
                last = true;
            }
            if (h < min_step)
                throw NumericalError(ErrorKind::StepUnderflow, "required step fell below 1e-14 x arclength");
            const double err = rk.trial(a + s * u, u, h, y, opts.tol);
            if (err <= 1.0 && std::isfinite(err)) {
                rk.accept(y);
                s = last ? len : s + h;
                ++local.accepted;
                const double e = std::max(err, 1e-10);
                double fac = 0.9 * std::pow(e, -0.17) * std::pow(err_prev, 0.04);
                fac = std::clamp(fac, 0.2, 10.0);
                err_prev = std::max(err, 1e-4);
                if (!last)
                    h = std::min(h * fac, opts.max_step);
            } else {
                ++local.rejected;
                const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
                h *= fac;
            }
        }
        check_state(y);
    }
    if (stats)
        *stats = local;
    return y;
}

// ---------------------------------------------------------------- Brent

double find_root_real(const std::function<double(double)>& f, Bracket br, double tol) {
    if (!(tol > 0.0))
        throw NumericalError(ErrorKind::Domain, "root tolerance must be positive");
    double a = br.lo, b = br.hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (!(fa * fb < 0.0)) {
        std::ostringstream os;
        os << "f(" << a << ")=" << fa << ", f(" << b << ")=" << fb;
        throw NumericalError(ErrorKind::NoSignChange, os.str());
    }
    double c = a, fc = fa, d = b - a, e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 400; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = std::max(0.5 * tol * (1.0 - 1e-9), 2.0 * eps * std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0)
            return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw NumericalError(ErrorKind::NonConvergence, "Brent iteration limit reached");
}

// ---------------------------------------------------------------- Muller

ComplexRoot find_root_complex(const std::function<ComplexValue(ComplexValue)>& f, ComplexValue seed, double tol,
                              const ComplexRootOptions& opts) {
    if (!(tol > 0.0))
        throw NumericalError(ErrorKind::Domain, "root tolerance must be positive");
    const double h = opts.probe * std::max(1.0, std::abs(seed));
    ComplexValue x0 = seed - h, x1 = seed + ComplexValue(0.0, h), x2 = seed + h;
    ComplexValue f0 = f(x0), f1 = f(x1), f2 = f(x2);
    std::array<double, 3> mags = {std::abs(f0), std::abs(f1), std::abs(f2)};
    std::sort(mags.begin(), mags.end());
    const double scale = mags[1] > 0.0 ? mags[1] : 1.0;

    auto report = [&](ComplexValue z, ComplexValue fz, int it) {
        return ComplexRoot{z, std::abs(fz), scale, it};
    };
    for (const auto& [z, fz] : {std::pair{x0, f0}, std::pair{x1, f1}, std::pair{x2, f2}})
        if (std::abs(fz) < tol * scale)
            return report(z, fz, 0);

    for (int it = 1; it <= opts.max_iterations; ++it) {
        ComplexValue x3;
        const ComplexValue q = (x2 - x1) / (x1 - x0);
        const ComplexValue A = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
        const ComplexValue B = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 + q * q * f0;
        const ComplexValue C = (1.0 + q) * f2;
        const ComplexValue disc = std::sqrt(B * B - 4.0 * A * C);
        const ComplexValue den = (std::abs(B + disc) >= std::abs(B - disc)) ? B + disc : B - disc;
        if (std::abs(den) > 0.0 && is_finite(den)) {
            x3 = x2 - (x2 - x1) * 2.0 * C / den;
        } else if (f2 != f1) {
            x3 = x2 - f2 * (x2 - x1) / (f2 - f1);
        } else {
            x3 = x2 + h * ComplexValue(0.5, 0.5);
        }
        if (!is_finite(x3))
            break;
        const ComplexValue f3 = f(x3);
        if (!is_finite(f3))
            break;
        if (std::abs(f3) < tol * scale)
            return report(x3, f3, it);
        x0 = x1; f0 = f1;
        x1 = x2; f1 = f2;
        x2 = x3; f2 = f3;
        if (x2 == x1)
            break;
    }
    std::ostringstream os;
    os << "Muller iteration from seed " << seed << " did not reach |f| < " << tol << " x " << scale;
    throw NumericalError(ErrorKind::NonConvergence, os.str());
}

}  // namespace schrospec
