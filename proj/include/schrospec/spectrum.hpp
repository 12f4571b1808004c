#pragma once

#include <cstddef>
#include <vector>

#include "schrospec/numerics.hpp"

namespace schrospec {

/// -y'' + c x^alpha y on [0, X] with y(0) = 0; the half-line is truncated at X.
struct OperatorSpec {
    ComplexValue c{1.0, 0.0};
    double alpha = 2.0 / 3.0;
    double X = 10.0;
    std::size_t grid_n = 1001;

    void validate() const;
    /// Spec whose X clears the turning point of the n_max-th eigenvalue with room for the WKB seed.
    static OperatorSpec for_eigenvalues(ComplexValue c, double alpha, int n_max, std::size_t grid_n = 1001);
};

struct SpectrumResult {
    std::vector<ComplexValue> eigenvalues;
    std::vector<double> t_values;               // Re(lambda_n / c^{2/(alpha+2)})
    std::vector<double> residuals;              // |det| at the root over the probe scale
    std::vector<double> asymptotic_deviation;   // |t_n / t_asymptotic(n) - 1|
    std::vector<double> scaling_deviation;      // |lambda_n / c^{2/(alpha+2)} - t_n(real)| / t_n(real)
    bool scaling_verified = false;              // every scaling_deviation < 1e-6
};

struct SampledFunction {
    double X = 0.0;
    std::vector<ComplexValue> values;   // values at x_j = j X / (n - 1)

    std::size_t size() const { return values.size(); }
    double step() const { return X / static_cast<double>(values.size() - 1); }
    double x(std::size_t j) const { return j * step(); }
};

/// Integral of sqrt(1 - zeta^alpha) over [0, 1] through the Gamma-function identity.
double bs_constant(double alpha);
/// The same integral by graded Gauss-Legendre quadrature.
double bs_constant_quadrature(double alpha);

/// Leading-order asymptotic t_n for -y'' + x^alpha y = t y, y(0) = 0.
double t_asymptotic(int n, double alpha);

/// Truncation radius clearing the turning point of eigenvalue lambda = |c|^{2/(alpha+2)} t_max with a
/// factor 1.5 and with at least ~20 units of decay of the subdominant solution beyond it.
double default_truncation(ComplexValue c, double alpha, double t_max);

/// Boundary value y(0; lambda) of the solution decaying at infinity, seeded at radius X with the
/// Liouville-Green form and normalized so that the seed amplitude is independent of lambda. The
/// shooting runs along the ray arg x = -arg(c)/(alpha+2), on which c x^alpha is positive.
ComplexValue spectral_det(const OperatorSpec& spec, ComplexValue lambda);

/// Same value split as mantissa * exp(log_scale) to stay finite for extreme truncations.
struct ScaledValue {
    ComplexValue mantissa;
    double log_scale;
    ComplexValue value() const;
};
ScaledValue spectral_det_scaled(const OperatorSpec& spec, ComplexValue lambda);

/// t_1 < ... < t_{n_max} for c = 1 by inward shooting and sign-change bracketing.
std::vector<double> real_spectrum(double alpha, int n_max, double X, double tol);

/// Complex eigenvalues lambda_n of the operator, polished on spectral_det from asymptotic seeds.
SpectrumResult complex_spectrum(const OperatorSpec& spec, int n_max, double tol);

/// Eigenfunction at an eigenvalue lambda, sampled on the spec grid, scaled to unit sup norm.
SampledFunction eigenfunction(const OperatorSpec& spec, ComplexValue lambda);

struct ResolventResult {
    SampledFunction y;
    ComplexValue wronskian;          // v u' - v' u at the grid midpoint
    double wronskian_variation = 0;  // max relative deviation of the Wronskian across the grid
};

/// Applies the inverse operator to f through the Green's function built from u (u(0) = 0) and the
/// decaying solution v.
ResolventResult apply_inverse(const OperatorSpec& spec, const SampledFunction& f);

/// Applies -y'' + c x^alpha y with a fourth-order finite-difference stencil; the first and last two
/// samples are left at zero.
SampledFunction apply_operator_fd(const OperatorSpec& spec, const SampledFunction& y);

struct SNumbers {
    std::vector<double> values;   // 1 / |lambda_n|
    double fitted_slope = 0.0;    // log-log slope over n in [max(1, n_max / 4), n_max]
    double expected_slope = 0.0;  // -2 alpha / (alpha + 2)
};

SNumbers s_numbers(const OperatorSpec& spec, int n_max);

/// Least-squares slope of log(values[n-1]) against log n over n in [n_lo, n_hi].
double loglog_slope(const std::vector<double>& values, int n_lo, int n_hi);

}  // namespace schrospec
