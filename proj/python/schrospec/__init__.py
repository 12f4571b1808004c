"""Threshold angle, Stokes geometry and spectra of -y'' + c x^alpha y on the half-line."""

from ._schrospec import (
    NumericalError,
    F_theta,
    F_theta_action,
    F_theta_closed,
    __version__,
    apply_inverse,
    bs_constant,
    complex_spectrum,
    completeness_verdict,
    default_truncation,
    ray_crossing_report,
    real_spectrum,
    run_cli,
    s_numbers,
    solve_theta0,
    spectral_det,
    stokes_graph,
    t_asymptotic,
    theta0,
    verify_paper_bounds,
)

__all__ = [
    "NumericalError",
    "F_theta",
    "F_theta_action",
    "F_theta_closed",
    "__version__",
    "apply_inverse",
    "bs_constant",
    "complex_spectrum",
    "completeness_verdict",
    "default_truncation",
    "ray_crossing_report",
    "real_spectrum",
    "run_cli",
    "s_numbers",
    "solve_theta0",
    "spectral_det",
    "stokes_graph",
    "t_asymptotic",
    "theta0",
    "verify_paper_bounds",
]
