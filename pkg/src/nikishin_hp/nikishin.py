"""Discrete measures, Nikishin chain products and Cauchy transforms.

A Nikishin generator is a list of constant-sign measures on closed intervals
where consecutive intervals are disjoint. Products of measures nest to the
right::

    chain(gen, 1, 3) == product_measure(σ1, product_measure(σ2, σ3))

which in general differs from ``product_measure(product_measure(σ1, σ2), σ3)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import (
    ComplexRational,
    Polynomial,
    RationalFunction,
    as_rational,
    isolate_real_roots,
    poly_invmod,
)
from .exact.roots import _SturmCounter, refine_real_root


class MeasureError(ValueError):
    """Invalid measure or generator data."""


def _interval(pair):
    lo, hi = (as_rational(v) for v in pair)
    if lo > hi:
        raise MeasureError(f"interval [{lo}, {hi}] is empty")
    return lo, hi


def intervals_disjoint(a, b):
    return a[1] < b[0] or b[1] < a[0]


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely many point masses of one common sign.

    Parameters
    ----------
    atoms : sequence of (point, mass)
        Points strictly increasing; masses nonzero and all of one sign.
    """

    atoms: tuple

    def __init__(self, atoms):
        parsed = tuple((as_rational(x), as_rational(w)) for x, w in atoms)
        if not parsed:
            raise MeasureError("a measure needs at least one atom")
        for (x0, _), (x1, _) in zip(parsed, parsed[1:]):
            if not x0 < x1:
                raise MeasureError("atom points must be strictly increasing")
        if any(w == 0 for _, w in parsed):
            raise MeasureError("atom masses must be nonzero")
        if len({w > 0 for _, w in parsed}) != 1:
            raise MeasureError("atom masses must share one sign")
        object.__setattr__(self, "atoms", parsed)

    @property
    def points(self):
        return tuple(x for x, _ in self.atoms)

    @property
    def masses(self):
        return tuple(w for _, w in self.atoms)

    @property
    def hull(self):
        return self.atoms[0][0], self.atoms[-1][0]

    @property
    def sign(self):
        return 1 if self.atoms[0][1] > 0 else -1

    def total_mass(self):
        """Signed total mass; its absolute value is the total variation."""
        return sum(self.masses, Fraction(0))

    def total_variation(self):
        return abs(self.total_mass())

    def scaled(self, c):
        c = as_rational(c)
        return DiscreteMeasure((x, w * c) for x, w in self.atoms)

    def __len__(self):
        return len(self.atoms)

    def to_json(self):
        return [[str(x), str(w)] for x, w in self.atoms]


@dataclass(frozen=True)
class NikishinGenerator:
    """Measures ``σ_1..σ_m`` with declared support intervals ``Δ_1..Δ_m``."""

    measures: tuple
    intervals: tuple

    def __init__(self, measures, intervals):
        measures = tuple(measures)
        intervals = tuple(_interval(iv) for iv in intervals)
        if not measures:
            raise MeasureError("a generator needs at least one measure")
        if len(measures) != len(intervals):
            raise MeasureError("one interval per measure is required")
        for j, (mu, iv) in enumerate(zip(measures, intervals), start=1):
            lo, hi = mu.hull
            if lo < iv[0] or hi > iv[1]:
                raise MeasureError(f"measure {j} has atoms outside its interval [{iv[0]}, {iv[1]}]")
        for j in range(len(intervals) - 1):
            if not intervals_disjoint(intervals[j], intervals[j + 1]):
                raise MeasureError(
                    f"consecutive intervals {j + 1} and {j + 2} must be disjoint "
                    f"(got [{intervals[j][0]}, {intervals[j][1]}] and "
                    f"[{intervals[j + 1][0]}, {intervals[j + 1][1]}])"
                )
        object.__setattr__(self, "measures", measures)
        object.__setattr__(self, "intervals", intervals)

    @property
    def m(self):
        return len(self.measures)

    def sigma(self, j):
        return self.measures[j - 1]

    def interval(self, j):
        return self.intervals[j - 1]

    def to_json(self):
        return [
            {"atoms": mu.to_json(), "interval": [str(iv[0]), str(iv[1])]}
            for mu, iv in zip(self.measures, self.intervals)
        ]

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, list):
            raise MeasureError("generator must be a list of measures")
        measures, intervals = [], []
        for j, item in enumerate(data, start=1):
            try:
                measures.append(DiscreteMeasure(item["atoms"]))
                intervals.append(item["interval"])
            except (KeyError, TypeError) as exc:
                raise MeasureError(f"measure {j}: missing or malformed field ({exc})") from None
            except (ValueError, ZeroDivisionError) as exc:
                raise MeasureError(f"measure {j}: {exc}") from None
            if len(item["interval"]) != 2:
                raise MeasureError(f"measure {j}: interval needs two endpoints")
        return cls(measures, intervals)


# ------------------------------------------------------------ transforms


def cauchy_eval(mu, z):
    """``sum(mass / (z - point))`` evaluated exactly.

    ``z`` may be a rational, a :class:`ComplexRational`, a ``(re, im)``
    pair of rationals, or a Python complex (then evaluated in floating point).
    """
    if isinstance(z, complex):
        return sum(float(w) / (z - float(x)) for x, w in mu.atoms)
    if isinstance(z, (tuple, list)):
        z = ComplexRational(*z)
    if isinstance(z, ComplexRational):
        total = ComplexRational(0)
        for x, w in mu.atoms:
            diff = z - x
            if not diff:
                raise ZeroDivisionError(f"z = {x} is an atom of the measure")
            total = total + w / diff
        return total
    z = as_rational(z)
    total = Fraction(0)
    for x, w in mu.atoms:
        if z == x:
            raise ZeroDivisionError(f"z = {x} is an atom of the measure")
        total += w / (z - x)
    return total


@lru_cache(maxsize=512)
def node_polynomial(points):
    """Monic ``prod(z - x)`` over the given points."""
    return Polynomial.from_roots(points)


@lru_cache(maxsize=512)
def cauchy_as_rational(mu):
    """Cauchy transform as a reduced rational function.

    The denominator is ``prod(z - x_i)``; numerator and denominator are
    coprime because every mass is nonzero.
    """
    den = node_polynomial(mu.points)
    num = Polynomial()
    for x, w in mu.atoms:
        q, _ = divmod(den, Polynomial((-x, 1)))
        num = num + q * w
    return RationalFunction._coprime(num, den)


def product_measure(a, b):
    """``d<a, b>(x) = b̂(x) da(x)``: the atoms of ``a`` reweighted by ``b̂``."""
    if not intervals_disjoint(a.hull, b.hull):
        raise MeasureError("product requires measures with disjoint hulls")
    return DiscreteMeasure((x, w * cauchy_eval(b, x)) for x, w in a.atoms)


@lru_cache(maxsize=1024)
def chain(gen, j, k):
    """``s_{j,k}`` for a generator (1-based indices).

    ``j <= k`` gives ``<σ_j, σ_{j+1}, ..., σ_k>``; ``j > k`` gives the
    reversed chain ``<σ_j, σ_{j-1}, ..., σ_k>``.
    """
    m = gen.m
    if not (1 <= j <= m and 1 <= k <= m):
        raise IndexError(f"chain indices ({j}, {k}) out of range 1..{m}")
    if j == k:
        return gen.sigma(j)
    step = 1 if k > j else -1
    return product_measure(gen.sigma(j), chain(gen, j + step, k))


def moments(mu, upto):
    """Exact moments ``c_0..c_upto``."""
    if upto < 0:
        raise ValueError("upto must be nonnegative")
    out = [Fraction(0)] * (upto + 1)
    for x, w in mu.atoms:
        p = w
        for nu in range(upto + 1):
            out[nu] += p
            p *= x
    return out


# ---------------------------------------------------------- inverse measure


@dataclass(frozen=True)
class InverseDecomposition:
    """``1/ŝ = ell + tau_hat`` for a discrete measure.

    ``tau`` holds the inverse measure with atoms at the zeros of the
    numerator of ``ŝ``. Those zeros are usually irrational, so ``tau``
    carries midpoint approximations and ``tau_intervals`` the exact
    isolating intervals; ``tau_hat`` itself is exact.
    """

    ell: Polynomial
    tau_hat: RationalFunction
    tau: DiscreteMeasure | None
    tau_intervals: tuple


def inverse_decomposition(mu, precision=Fraction(1, 10**30)):
    """Split ``1/ŝ`` into its linear part and the transform of the inverse measure.

    Parameters
    ----------
    mu : DiscreteMeasure
    precision : rational
        Width to which each atom of the inverse measure is isolated.

    Returns
    -------
    InverseDecomposition
    """
    s_hat = cauchy_as_rational(mu)
    ell, rem = divmod(s_hat.den, s_hat.num)
    if rem.is_zero():
        return InverseDecomposition(ell, RationalFunction.zero(), None, ())
    q = s_hat.num
    tau_hat = RationalFunction._coprime(rem * (1 / q.leading), q.monic())
    counter = _SturmCounter(q)
    dq = q.derivative()
    atoms, intervals = [], []
    for a, b in isolate_real_roots(q):
        a, b = refine_real_root(counter, a, b, as_rational(precision))
        mid = (a + b) / 2
        atoms.append((mid, rem(mid) / dq(mid)))
        intervals.append((a, b))
    return InverseDecomposition(ell, tau_hat, DiscreteMeasure(atoms), tuple(intervals))


def cauchy_of_weighted(tau_hat, weight):
    """Exact transform of ``weight(x) dτ(x)`` from ``τ̂ = R/Q`` alone.

    With ``Q`` squarefree, ``τ`` sits on the zeros of ``Q`` and the result is
    ``H/Q`` where ``H`` interpolates ``R * weight`` there, i.e.
    ``H = R * num(weight) * den(weight)^{-1} mod Q``.
    """
    if tau_hat.is_zero():
        return RationalFunction.zero()
    q, r = tau_hat.den, tau_hat.num
    inv = poly_invmod(weight.den % q, q)
    h = (r * (weight.num % q) % q) * inv % q
    return RationalFunction(h, q)


def quotient_identity_residual(gen, k):
    """``ŝ_{1,k}/ŝ_{1,1} - |s_{1,k}|/|s_{1,1}| + <τ_{1,1}, <s_{2,k}, σ_1>>^``.

    Identically zero for every valid generator. Total masses are signed so
    the identity holds whatever the orientation of the intervals.
    """
    if gen.m < 2 or not 2 <= k <= gen.m:
        raise IndexError("need m >= 2 and 2 <= k <= m")
    s11 = gen.sigma(1)
    s1k = chain(gen, 1, k)
    lhs = cauchy_as_rational(s1k) / cauchy_as_rational(s11)
    ratio = s1k.total_mass() / s11.total_mass()
    inner = product_measure(chain(gen, 2, k), s11)
    dec = inverse_decomposition(s11)
    term = cauchy_of_weighted(dec.tau_hat, cauchy_as_rational(inner))
    return lhs - ratio + term
