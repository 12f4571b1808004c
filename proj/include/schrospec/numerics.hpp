#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schrospec {

using ComplexValue = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

enum class ErrorKind {
    Domain,
    StepUnderflow,
    NoSignChange,
    NonConvergence,
    TurningPointProximity,
    PhaseTracking,
    TracingStall,
    Ambiguity,
    SignAnomaly,
    BracketMiss,
    OverflowGuard,
    RootCollision,
    WronskianDegenerate,
};

const char* to_string(ErrorKind kind);

class NumericalError : public std::runtime_error {
public:
    NumericalError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline bool is_finite(ComplexValue z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Oriented polyline in the complex plane. Consecutive nodes are distinct.
class Contour {
public:
    explicit Contour(std::vector<ComplexValue> nodes);
    static Contour segment(ComplexValue a, ComplexValue b) { return Contour({a, b}); }

    std::span<const ComplexValue> nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    ComplexValue front() const { return nodes_.front(); }
    ComplexValue back() const { return nodes_.back(); }
    double arclength() const;

private:
    std::vector<ComplexValue> nodes_;
};

struct Bracket {
    double lo;
    double hi;

    Bracket(double lo_, double hi_);
    double width() const { return hi - lo; }
};

// ---------------------------------------------------------------- special functions

/// Gamma function for x > 0 (Lanczos, g = 7, 9 coefficients).
double gamma_fn(double x);

// ---------------------------------------------------------------- quadrature

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights; rules for n <= 64 are computed once and shared.
const GaussRule& gauss_rule(int n);

using ComplexIntegrand = std::function<ComplexValue(ComplexValue)>;

/// n-point Gauss-Legendre rule on the straight segment seg = [a, b].
ComplexValue gauss_legendre(const ComplexIntegrand& f, const Contour& seg, int n);

/// Composite rule: `panels` equal panels with an n-point rule on each.
ComplexValue gauss_legendre_composite(const ComplexIntegrand& f, const Contour& seg, int panels, int n = 16);

// ---------------------------------------------------------------- contour ODEs

using State = std::vector<ComplexValue>;
using OdeField = std::function<void(ComplexValue z, std::span<const ComplexValue> y, std::span<ComplexValue> dydz)>;

struct OdeOptions {
    double tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    // When positive, steps of at most this arclength are taken without error control.
    double fixed_step = 0.0;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

/// Dormand-Prince 5(4) along each segment of `path`, parameterized by arclength.
/// Local error per step is kept below tol * max(1, |y_i|) componentwise.
State integrate_ode_contour(const OdeField& field, State start, const Contour& path, const OdeOptions& opts,
                            OdeStats* stats = nullptr);

inline State integrate_ode_contour(const OdeField& field, State start, const Contour& path, double tol) {
    return integrate_ode_contour(field, std::move(start), path, OdeOptions{.tol = tol});
}

// ---------------------------------------------------------------- root finding

/// Brent's method on a sign-changing bracket; terminates when the bracket is narrower than tol.
double find_root_real(const std::function<double(double)>& f, Bracket b, double tol);

struct ComplexRootOptions {
    int max_iterations = 60;
    // Half-size of the probe triangle around the seed, relative to max(1, |seed|).
    double probe = 1e-3;
};

struct ComplexRoot {
    ComplexValue root;
    double residual;   // |f(root)|
    double scale;      // median |f| over the probe triangle
    int iterations;
};

/// Muller's method with secant fallback. Converged when |f(z)| < tol * scale.
ComplexRoot find_root_complex(const std::function<ComplexValue(ComplexValue)>& f, ComplexValue seed, double tol,
                              const ComplexRootOptions& opts = {});

}  // namespace schrospec
