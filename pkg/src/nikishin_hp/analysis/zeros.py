"""Zero structure of the last polynomial ``a_{n,m}``."""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..exact import ComplexRational, as_rational, decimal_abs, locate_roots, refine_root, sign_changes


@dataclass(frozen=True)
class ZeroReport:
    """Interior sign changes and exterior zeros of ``a_{n,m}``.

    ``matched`` pairs exterior zeros with zeros of ``T`` (repeated by
    multiplicity) so that the total distance is minimal; each entry is
    ``(zero, T_zero, distance)`` with points as complex numbers.
    """

    n: int
    deg_last: int
    interior_sign_changes: int
    exterior_zeros: tuple
    matched: tuple
    unmatched_exterior: tuple
    converged: bool = True
    level_sign_changes: dict = field(default_factory=dict)

    @property
    def exterior_count(self):
        return sum(d.multiplicity for d in self.exterior_zeros)

    @property
    def max_match_distance(self):
        return max((d for _, _, d in self.matched), default=None)

    def to_json(self):
        def pt(z):
            return [z.real, z.imag]

        return {
            "n": self.n,
            "deg_last": self.deg_last,
            "interior_sign_changes": self.interior_sign_changes,
            "exterior_zeros": [
                {
                    "center": [str(d.center[0]), str(d.center[1])],
                    "radius": str(d.radius),
                    "multiplicity": d.multiplicity,
                }
                for d in self.exterior_zeros
            ],
            "matched": [{"zero": pt(a), "T_zero": pt(b), "distance": dist} for a, b, dist in self.matched],
            "unmatched_exterior": [pt(z) for z in self.unmatched_exterior],
            "max_match_distance": self.max_match_distance,
            "converged": self.converged,
            "level_sign_changes": {str(k): v for k, v in self.level_sign_changes.items()},
        }


def _on_interval(disk, lo, hi):
    return disk.is_real and lo <= disk.center[0] <= hi


def _distance(u, v):
    """Distance between the exact centers of two root disks, as a float."""
    dre, dim = u.center[0] - v.center[0], u.center[1] - v.center[1]
    return float(decimal_abs(ComplexRational._raw(dre, dim), 20))


def match_points(zeros, targets, distance=None):
    """Distance-minimising assignment of ``zeros`` to ``targets``.

    ``distance`` defaults to ``abs(z - t)`` for complex inputs. Returns
    ``(pairs, unmatched)`` where ``pairs`` holds ``(z, t, distance)``.
    """
    if not zeros or not targets:
        return (), tuple(zeros)
    distance = distance or (lambda z, t: abs(z - t))
    cost = np.array([[distance(z, t) for t in targets] for z in zeros], dtype=float)
    rows, cols = linear_sum_assignment(cost)
    pairs = tuple((zeros[i], targets[j], float(cost[i, j])) for i, j in zip(rows, cols))
    used = set(rows.tolist())
    return pairs, tuple(z for i, z in enumerate(zeros) if i not in used)


def zero_report(solution, inst, precision=Fraction(1, 10**12), max_refinements=40):
    """Count interior sign changes and locate the exterior zeros of ``a_{n,m}``.

    Sign changes are exact Sturm counts on the open interior of ``Δ_m``.
    Exterior zeros come from certified root location; a certification
    failure is recorded in ``converged`` and the partial report is kept.
    Exterior zeros near a zero of ``T`` are refined until their radius is
    below a thousandth of the reported distance. Sign changes of ``a_{n,j}``
    (``1 <= j < m``) on the same interior are reported in
    ``level_sign_changes``.
    """
    a_last = solution.a[-1]
    if a_last.is_zero():
        raise ValueError("a_{n,m} is identically zero")
    lo, hi = (as_rational(v) for v in inst.gen.interval(inst.m))
    interior = sign_changes(a_last, lo, hi)
    levels = {}
    for j in range(1, inst.m):
        aj = solution.a[j]
        levels[j] = 0 if aj.is_zero() else sign_changes(aj, lo, hi)
    if a_last.degree <= 0:
        return ZeroReport(solution.n, a_last.degree, interior, (), (), (), True, levels)
    loc = locate_roots(a_last, precision)
    exterior = [d for d in loc.roots if not _on_interval(d, lo, hi)]
    targets = list(inst.t_roots)
    for _ in range(max_refinements):
        loose = False
        for i, d in enumerate(exterior):
            dist = min((_distance(d, t) for t in targets), default=None)
            if dist is None or d.radius == 0 or d.radius * 1000 <= dist:
                continue
            if d.radius < Fraction(1, 10**300):
                continue
            exterior[i] = refine_root(a_last, d, d.radius / 2**40)
            loose = True
        if not loose:
            break
    exterior = tuple(exterior)
    zeros = [d for d in exterior for _ in range(d.multiplicity)]
    tz = [t for t in targets for _ in range(t.multiplicity)]
    pairs, unmatched = match_points(zeros, tz, _distance)
    matched = tuple((z.as_complex(), t.as_complex(), dist) for z, t, dist in pairs)
    return ZeroReport(
        solution.n,
        a_last.degree,
        interior,
        exterior,
        matched,
        tuple(z.as_complex() for z in unmatched),
        loc.converged,
        levels,
    )
