"""Conformal maps of the exterior of an interval onto the unit disk."""

import cmath
import math

import numpy as np

from ..exact import ComplexRational


def _as_complex(z):
    if isinstance(z, ComplexRational):
        return complex(z)
    if isinstance(z, (tuple, list)):
        return complex(float(z[0]), float(z[1]))
    return complex(z)


def _check_off(interval, z, what):
    a, b = interval
    if z.imag == 0 and a <= z.real <= b:
        raise ValueError(f"{what} = {z} lies on the interval [{a}, {b}]")


def phi_inf(interval, z):
    """``φ_∞(z) = 1/(u + sqrt(u^2 - 1))``, ``u = (2z - a - b)/(b - a)``, with ``|φ_∞| < 1``."""
    a, b = (float(v) for v in interval)
    z = _as_complex(z)
    if cmath.isinf(z):
        return 0j
    _check_off((a, b), z, "z")
    u = (2 * z - a - b) / (b - a)
    s = cmath.sqrt(u - 1) * cmath.sqrt(u + 1)
    w = u + s
    if abs(w) < 1:
        w = u - s
    return 1 / w


def phi(interval, t, z):
    """``φ_t(z)``: the disk map of the exterior of ``interval`` sending ``t`` to 0.

    ``t = None`` (or an infinite value) gives ``φ_∞``. Otherwise
    ``(φ_∞(z) - φ_∞(t)) / (1 - conj(φ_∞(t)) φ_∞(z))``, whose modulus is
    all that the rate bounds use.

    Examples
    --------
    >>> round(phi((-1, 1), None, 1.25).real, 12)
    0.5
    """
    fz = phi_inf(interval, z)
    if t is None:
        return fz
    tc = _as_complex(t)
    if cmath.isinf(tc):
        return fz
    _check_off(tuple(float(v) for v in interval), tc, "t")
    ft = phi_inf(interval, tc)
    return (fz - ft) / (1 - ft.conjugate() * fz)


def level_curve(interval, rho, count=256):
    """``count`` points of ``{z : |φ_∞(z)| = rho}`` (an ellipse around the interval)."""
    if not 0 < rho < 1:
        raise ValueError("rho must lie in (0, 1)")
    a, b = (float(v) for v in interval)
    theta = np.linspace(0, 2 * math.pi, count, endpoint=False)
    w = np.exp(1j * theta) / rho
    u = (w + 1 / w) / 2
    return ((b - a) * u + a + b) / 2
