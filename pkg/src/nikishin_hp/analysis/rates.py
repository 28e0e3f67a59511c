"""Ratio errors against the limit functions and geometric rate bounds."""

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from ..exact import ComplexRational, as_rational, decimal_abs
from ..nikishin import cauchy_eval, chain
from .conformal import level_curve, phi, phi_inf
from .forms import evaluate_f


# --------------------------------------------------------------- the grid


@dataclass(frozen=True)
class Grid:
    """Finite set of exact test points with a human-readable label."""

    points: tuple
    label: str

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def to_json(self):
        return {"label": self.label, "points": [[str(p.re), str(p.im)] for p in self.points]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(ComplexRational(*p) for p in data["points"]), data.get("label", "explicit"))


def _circle_point(center, radius, k, count):
    # Rational point on the circle: tan(θ/2) rationalised, then the exact
    # parametrisation ((1 - s^2) + 2is) / (1 + s^2).
    theta = 2 * math.pi * k / count
    if abs(theta - math.pi) < 1e-12:
        return ComplexRational(center - radius, 0)
    s = Fraction(math.tan(theta / 2)).limit_denominator(1000)
    d = 1 + s * s
    return ComplexRational(center + radius * (1 - s * s) / d, radius * 2 * s / d)


def default_grid(interval, t_roots=(), count=16, scale=3):
    """``count`` exact points on the circle of radius ``scale`` times the half-width.

    The circle is centred at the interval's midpoint; points within 1/2 of a
    zero of ``T`` are dropped.
    """
    lo, hi = (as_rational(v) for v in interval)
    center, radius = (lo + hi) / 2, scale * (hi - lo) / 2
    pts = []
    for k in range(count):
        p = _circle_point(center, radius, k, count)
        if all(abs(complex(p) - r.as_complex()) >= 0.5 for r in t_roots):
            pts.append(p)
    return Grid(tuple(pts), f"circle(center={center}, radius={radius}, count={count})")


def explicit_grid(points):
    return Grid(tuple(ComplexRational.coerce(p) for p in points), "explicit")


# ----------------------------------------------------------- ratio errors


@dataclass(frozen=True)
class RatioError:
    """Sup over a grid of ``|a_{n,j}/a_{n,m} - target|``, with per-point values.

    ``excluded`` lists ``(point, reason)`` for points where the ratio or the
    target has a pole.
    """

    j: int
    n: int
    sup: Decimal
    values: tuple
    excluded: tuple = ()

    def to_json(self):
        return {
            "j": self.j,
            "n": self.n,
            "sup": str(self.sup),
            "values": [str(v) for v in self.values],
            "excluded": [{"point": [str(p.re), str(p.im)], "reason": r} for p, r in self.excluded],
        }


def ratio_error(solution, gen, j, grid, perturbations=None, digits=40):
    """Distance between ``a_{n,j}/a_{n,m}`` and its limit on ``grid``.

    The limit is ``ŝ_{m,j+1}`` for ``1 <= j <= m-1`` and ``f`` for ``j = 0``
    (which needs the perturbations; ``None`` means all zero). Every value is
    computed exactly and reported as a ``digits``-digit Decimal.
    """
    m = gen.m
    if not 0 <= j < m:
        raise IndexError(f"j must lie in 0..{m - 1}")
    a_j, a_m = solution.a[j], solution.a[m]
    target_measure = chain(gen, m, j + 1) if j > 0 else None
    if j == 0 and perturbations is None:
        from ..hp_system import Perturbation

        perturbations = [Perturbation.zero()] * m
    values, excluded = [], []
    for p in grid:
        z = ComplexRational.coerce(p)
        den = a_m(z)
        if not den:
            excluded.append((z, "zero of a_{n,m}"))
            continue
        try:
            target = cauchy_eval(target_measure, z) if j > 0 else evaluate_f(gen, perturbations, z)
        except ZeroDivisionError:
            excluded.append((z, "pole of the limit function"))
            continue
        values.append(decimal_abs(a_j(z) / den - target, digits))
    sup = max(values, default=Decimal(0))
    return RatioError(j, solution.n, sup, tuple(values), tuple(excluded))


# ------------------------------------------------------------- rate bound


def _max_over_t(interval_m, t_lo, t_hi, samples, z):
    """``max_t |φ_t(z)|`` over ``[t_lo, t_hi]``: samples, then bounded refinement."""

    def neg(t):
        return -abs(phi(interval_m, t, z))

    ts = sorted(set([t_lo, t_hi] + [t for t in samples if t_lo <= t <= t_hi]))
    vals = [-neg(t) for t in ts]
    k = int(np.argmax(vals))
    best = vals[k]
    lo = ts[max(k - 1, 0)]
    hi = ts[min(k + 1, len(ts) - 1)]
    if hi > lo:
        res = minimize_scalar(neg, bounds=(lo, hi), method="bounded", options={"xatol": 1e-6 * max(1.0, abs(hi - lo))})
        best = max(best, -res.fun)
    return best


@dataclass(frozen=True)
class RateReport:
    """Geometric rate bound ``δ(K) ||φ_∞||_K`` next to measured errors.

    ``measured[j]`` is a list of ``(n, sup-error)`` pairs; ``root_n[j]`` the
    corresponding ``error^(1/n)``.
    """

    K: Grid
    delta_K: float
    phi_inf_norm_K: float
    bound: float
    measured: dict
    root_n: dict
    kappa_rho: float | None = None
    rho: float | None = None
    K_outside_level_curve: bool | None = None
    extra: dict = field(default_factory=dict)

    def latest_root_n(self):
        """Largest ``error^(1/n)`` over ``j`` at the largest measured ``n``."""
        best = None
        for rows in self.root_n.values():
            if rows:
                n, v = rows[-1]
                if best is None or n > best[0] or (n == best[0] and v > best[1]):
                    best = (n, v)
        return best

    def to_json(self):
        return {
            "K": self.K.to_json(),
            "delta_K": self.delta_K,
            "phi_inf_norm_K": self.phi_inf_norm_K,
            "bound": self.bound,
            "bound_below_one": self.bound < 1,
            "kappa_rho": self.kappa_rho,
            "rho": self.rho,
            "K_outside_level_curve": self.K_outside_level_curve,
            "measured": {str(j): [[n, str(e)] for n, e in rows] for j, rows in self.measured.items()},
            "root_n": {str(j): [[n, v] for n, v in rows] for j, rows in self.root_n.items()},
        }


def _root(err, n):
    if err == 0:
        return 0.0
    return float((Decimal(err).ln() / n).exp())


def delta_K(K, interval_m, interval_prev, t_samples=(), grid_size=33):
    """``max |φ_t(z)|`` over ``t`` in the previous interval and ``z`` in ``K``."""
    lo, hi = (float(v) for v in interval_prev)
    samples = [float(t) for t in t_samples] + list(np.linspace(lo, hi, grid_size))
    return max(_max_over_t(interval_m, lo, hi, samples, complex(z)) for z in K)


def kappa_rho(interval_m, interval_prev, rho, t_samples=(), count=256, grid_size=33):
    """``min |φ_t(z)|`` over ``t`` in the previous interval and ``z`` on ``|φ_∞| = rho``."""
    lo, hi = (float(v) for v in interval_prev)
    ts = sorted(set([float(t) for t in t_samples] + list(np.linspace(lo, hi, grid_size))))
    curve = level_curve(interval_m, rho, count)
    return min(abs(phi(interval_m, t, z)) for t in ts for z in curve)


def rate_report(measured, interval_m, interval_prev, K, t_samples=(), rho=None):
    """Compare measured errors with the bound ``δ(K) ||φ_∞||_K``.

    Parameters
    ----------
    measured : dict
        ``j -> [(n, sup-error), ...]`` in ascending ``n``.
    interval_m, interval_prev : (a, b)
        ``Δ_m`` (bounded) and ``Δ_{m-1}``.
    K : Grid or sequence of points
    t_samples : sequence
        Extra sample points in ``Δ_{m-1}`` (typically the atoms of
        ``σ_{m-1}``) seeding the maximisation over ``t``.
    rho : float, optional
        Level for the ``κ_ρ`` diagnostic.
    """
    if not isinstance(K, Grid):
        K = explicit_grid(K)
    if not len(K):
        raise ValueError("the grid K is empty")
    if any(math.isinf(float(v)) for v in interval_m):
        raise ValueError("the rate bound needs a bounded last interval")
    pts = [complex(z) for z in K]
    dK = delta_K(pts, interval_m, interval_prev, t_samples)
    norm = max(abs(phi_inf(interval_m, z)) for z in pts)
    root_n = {j: [(n, _root(e, n)) for n, e in rows] for j, rows in measured.items()}
    kap = outside = None
    if rho is not None:
        kap = kappa_rho(interval_m, interval_prev, rho, t_samples)
        outside = all(abs(phi_inf(interval_m, z)) < rho for z in pts)
    return RateReport(K, dK, norm, dK * norm, dict(measured), root_n, kap, rho, outside)
