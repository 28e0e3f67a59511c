"""Checks and diagnostics on computed Hermite-Padé polynomials."""

from .conformal import level_curve, phi, phi_inf
from .forms import (
    FormOrders,
    LevelForms,
    LinearForm,
    PoleCheck,
    evaluate_f,
    form_orders,
    level_forms,
    orthogonality_check,
    pole_hypothesis_check,
    required_orders,
    target_f,
    telescoping_residual,
)
from .rates import (
    Grid,
    RateReport,
    RatioError,
    default_grid,
    delta_K,
    explicit_grid,
    kappa_rho,
    rate_report,
    ratio_error,
)
from .sweep import NResult, csv_columns, diagnose, run_sweep, sweep_rate_report, write_csv
from .zeros import ZeroReport, match_points, zero_report

__all__ = [
    "FormOrders",
    "Grid",
    "LevelForms",
    "LinearForm",
    "NResult",
    "PoleCheck",
    "RateReport",
    "RatioError",
    "ZeroReport",
    "csv_columns",
    "default_grid",
    "delta_K",
    "diagnose",
    "evaluate_f",
    "explicit_grid",
    "form_orders",
    "kappa_rho",
    "level_curve",
    "level_forms",
    "match_points",
    "orthogonality_check",
    "phi",
    "phi_inf",
    "pole_hypothesis_check",
    "rate_report",
    "ratio_error",
    "required_orders",
    "run_sweep",
    "sweep_rate_report",
    "target_f",
    "telescoping_residual",
    "write_csv",
    "zero_report",
]
