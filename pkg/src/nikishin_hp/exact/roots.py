"""Real-root counting with Sturm sequences and certified root location.

Real roots are isolated and refined exactly. Non-real roots come from an
Aberth-Ehrlich iteration in multiprecision arithmetic whose output disks are
then certified against the exact polynomial with Weierstrass-correction
inclusion radii.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .. import _backend
from .polynomial import Polynomial, as_rational, int_primitive, squarefree_decomposition, squarefree_part

# ---------------------------------------------------------------- Sturm


def _endpoint(value):
    if isinstance(value, float) and math.isinf(value):
        return value
    return as_rational(value)


def sturm_chain(ints):
    """Sturm sequence of a squarefree primitive integer polynomial.

    Remainders are scaled by positive integers only, which leaves every sign
    variation count unchanged.
    """
    chain = [list(ints)]
    d = [i * c for i, c in enumerate(ints)][1:]
    if not d:
        return chain
    chain.append(int_primitive(d))
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r, k = _backend.kernels.int_prem(a, b)
        if not r:
            break
        if b[-1] < 0 and k % 2 == 1:
            r = [-v for v in r]
        chain.append([-v for v in int_primitive(r)])
    return chain


class _SturmCounter:
    """Counts distinct real roots of ``p`` in half-open intervals ``(a, b]``."""

    def __init__(self, p):
        sf = squarefree_part(p)
        _, self.ints = sf.integer_form()
        self.chain = sturm_chain(self.ints)

    def variations(self, x):
        kern = _backend.kernels
        if isinstance(x, float):
            return kern.sign_variations_inf(self.chain, 1 if x > 0 else -1)
        return kern.sign_variations(self.chain, x.numerator, x.denominator)

    def sign(self, x):
        return _backend.kernels.int_sign_at(self.ints, x.numerator, x.denominator)

    def is_root(self, x):
        return not isinstance(x, float) and self.sign(x) == 0

    def count_half_open(self, a, b):
        return self.variations(a) - self.variations(b)


class _BracketCounter:
    """Root counts for a polynomial whose roots are all real and simple.

    ``points`` is an increasing list of rationals at which ``p`` alternates
    in sign, one more point than ``deg p``; each gap then holds exactly one
    root and there are no others. Counting reduces to locating endpoints
    relative to the gaps.
    """

    def __init__(self, ints, points, signs):
        self.ints = ints
        self.points = points
        self.signs = signs

    def sign(self, x):
        return _backend.kernels.int_sign_at(self.ints, x.numerator, x.denominator)

    def is_root(self, x):
        return not isinstance(x, float) and self.sign(x) == 0

    def _below(self, i, x):
        """True when the root in gap ``i`` is ``<= x``."""
        lo, hi = self.points[i], self.points[i + 1]
        if x >= hi:
            return True
        if x <= lo:
            return False
        return self.sign(x) != self.signs[i]

    def count_half_open(self, a, b):
        n = 0
        for i in range(len(self.points) - 1):
            above_a = True if isinstance(a, float) and a < 0 else (
                False if isinstance(a, float) else not self._below(i, a)
            )
            below_b = True if isinstance(b, float) and b > 0 else (
                False if isinstance(b, float) else self._below(i, b)
            )
            if above_a and below_b:
                n += 1
        return n

    def brackets(self):
        return list(zip(self.points, self.points[1:]))


def _real_bracket_counter(ints, dps=60):
    """Try to certify that all roots are real and simple by sign alternation.

    Approximate roots come from Aberth iteration; separating rationals are
    placed between consecutive approximations and beyond both ends, and the
    exact signs there must alternate. Returns None when that fails.
    """
    d = len(ints) - 1
    if d < 1:
        return None
    with mpmath.workdps(dps):
        zs, _ = _aberth([mpmath.mpf(c) for c in ints], dps, tol=mpmath.mpf(10) ** (-dps // 2))
        scale = max(1, max(abs(z) for z in zs))
        if any(abs(z.imag) > mpmath.mpf(10) ** (-dps // 3) * scale for z in zs):
            return None
        xs = sorted(z.real for z in zs)
        gaps = [xs[i + 1] - xs[i] for i in range(d - 1)]
        margin = 1 + (xs[-1] - xs[0])
        pts = [xs[0] - margin] + [(xs[i] + xs[i + 1]) / 2 for i in range(d - 1)] + [xs[-1] + margin]
        if any(g <= 0 for g in gaps):
            return None
        pts = [_to_fraction(x) for x in pts]
    kern = _backend.kernels
    signs = [kern.int_sign_at(ints, x.numerator, x.denominator) for x in pts]
    if any(s == 0 for s in signs) or any(signs[i] == signs[i + 1] for i in range(d)):
        return None
    return _BracketCounter(list(ints), pts, signs)


def _counter(p):
    """Bracket counter when every root is real and simple, Sturm counter otherwise."""
    _, ints = p.integer_form()
    fast = _real_bracket_counter(ints)
    return fast if fast is not None else _SturmCounter(p)


def sturm_root_count(p, lo=-math.inf, hi=math.inf, *, include_lo=True, include_hi=True):
    """Number of distinct real roots of ``p`` in an interval.

    Parameters
    ----------
    p : Polynomial
        Nonzero polynomial.
    lo, hi : rational or +-inf
        Interval endpoints, ``lo <= hi``.
    include_lo, include_hi : bool
        Whether each finite endpoint belongs to the interval.

    Examples
    --------
    >>> sturm_root_count(Polynomial([-2, 0, 1]), 0, 2)
    1
    """
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    lo, hi = _endpoint(lo), _endpoint(hi)
    if p.degree == 0 or lo > hi:
        return 0
    counter = _counter(p)
    if lo == hi:
        return int(include_lo and include_hi and counter.is_root(lo))
    n = counter.count_half_open(lo, hi)
    if include_lo and counter.is_root(lo):
        n += 1
    if not include_hi and counter.is_root(hi):
        n -= 1
    return n


def sign_changes(p, lo, hi):
    """Number of sign changes of ``p`` in the open interval ``(lo, hi)``.

    Equals the number of distinct roots of odd multiplicity there.
    """
    if p.is_zero():
        raise ValueError("sign changes of the zero polynomial")
    if p.degree <= 0:
        return 0
    fast = _real_bracket_counter(p.integer_form()[1])
    if fast is not None:
        lo, hi = _endpoint(lo), _endpoint(hi)
        return fast.count_half_open(lo, hi) - (1 if fast.is_root(hi) else 0)
    total = 0
    for factor, mult in squarefree_decomposition(p):
        if mult % 2 == 1:
            total += sturm_root_count(factor, lo, hi, include_lo=False, include_hi=False)
    return total


def _cauchy_bound(ints):
    lead = abs(ints[-1])
    return 1 + max(-(-abs(c) // lead) for c in ints[:-1])


def isolate_real_roots(p):
    """Disjoint intervals ``(a, b]`` each holding exactly one real root of ``p``.

    Returned as sorted ``(a, b)`` Fraction pairs. ``p`` may have repeated
    roots; each distinct root appears once.
    """
    if p.degree <= 0:
        return []
    counter = _counter(p)
    if isinstance(counter, _BracketCounter):
        return counter.brackets()
    if len(counter.ints) <= 1:
        return []
    bound = Fraction(_cauchy_bound(counter.ints))
    out = []
    stack = [(-bound, bound, counter.count_half_open(-bound, bound))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        left = counter.count_half_open(a, mid)
        stack.append((a, mid, left))
        stack.append((mid, b, n - left))
    out.sort()
    return out


def refine_real_root(counter, a, b, width):
    """Shrink an isolating interval ``(a, b]`` below ``width``; exact hits collapse it."""
    if counter.sign(b) == 0:
        return b, b
    sb = counter.sign(b)
    while b - a > width:
        mid = (a + b) / 2
        sm = counter.sign(mid)
        if sm == 0:
            return mid, mid
        if sm == sb:
            b = mid
        else:
            a = mid
    return a, b


# ------------------------------------------------------------ root location


@dataclass(frozen=True)
class RootDisk:
    """A disk ``|z - center| <= radius`` holding one distinct root."""

    center: tuple
    radius: Fraction
    is_real: bool
    multiplicity: int

    def as_complex(self):
        return complex(float(self.center[0]), float(self.center[1]))


@dataclass(frozen=True)
class RootLocation:
    roots: tuple
    converged: bool

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    @property
    def total_multiplicity(self):
        return sum(r.multiplicity for r in self.roots)


def _to_fraction(x):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2 ** (-exp))


def _root_radius(coeffs, center):
    """Fujiwara bound on ``|z - center|`` over the roots; ``coeffs`` ascending."""
    d = len(coeffs) - 1
    shifted = list(coeffs)
    # Taylor shift by repeated synthetic division
    for k in range(d):
        for i in range(d - 1, k - 1, -1):
            shifted[i] += center * shifted[i + 1]
    lead = abs(shifted[d])
    terms = [abs(shifted[d - k] / lead) ** (mpmath.mpf(1) / k) for k in range(1, d)]
    terms.append(abs(shifted[0] / (2 * lead)) ** (mpmath.mpf(1) / d))
    return 2 * max(terms)


def _aberth(coeffs, dps, maxiter=400, tol=None):
    """Aberth-Ehrlich simultaneous iteration; ``coeffs`` ascending mpmath values.

    Starts on a circle around the centroid of the roots that encloses them
    all (Fujiwara bound), where Newton-type steps are well behaved. Stops when the largest relative
    step drops below ``tol`` (default ``10**(8 - dps)``) or stops shrinking
    once below ``tol ** (1/2)`` (at most ``8`` further sweeps, since the
    rounding floor can sit just above ``tol``); the flag reports whether
    ``tol`` was met.
    """
    d = len(coeffs) - 1
    lead = coeffs[-1]
    desc = list(reversed(coeffs))
    ddesc = [c * (d - i) for i, c in enumerate(desc[:-1])]
    centroid = -coeffs[-2] / (d * lead)
    spread = _root_radius(coeffs, centroid)
    if spread == 0:
        spread = mpmath.mpf(1)
    zs = [centroid + spread * mpmath.expj(2 * mpmath.pi * k / d + mpmath.mpf("0.4")) for k in range(d)]
    tol = mpmath.mpf(10) ** (-dps + 8) if tol is None else tol
    loose = mpmath.sqrt(tol)
    best, stalled, extra = None, 0, 0
    for _ in range(maxiter):
        worst = mpmath.mpf(0)
        for i in range(d):
            zi = zs[i]
            pv = mpmath.polyval(desc, zi)
            if pv == 0:
                continue
            ratio = pv / mpmath.polyval(ddesc, zi)
            s = mpmath.fsum(1 / (zi - zs[j]) for j in range(d) if j != i)
            step = ratio / (1 - ratio * s)
            zs[i] = zi - step
            worst = max(worst, abs(step) / max(1, abs(zs[i])))
        if worst < tol:
            return zs, True
        if worst < loose:
            extra += 1
            if best is not None and worst >= best:
                stalled += 1
            else:
                best, stalled = worst, 0
            if stalled >= 3 or extra > 8:
                return zs, False
    return zs, False


def _inclusion_radii(p, centers):
    """Weierstrass-correction radii ``deg * |p(c_i)| / |lead * prod(c_i - c_j)|``.

    Every root lies in the union of the disks, and a connected union of
    ``k`` disks holds exactly ``k`` roots. ``|p(c_i)|`` is evaluated exactly
    at the rational centers; the remaining floating factors are rounded
    outward.
    """
    from .rational import ComplexRational

    d = len(centers)
    radii = []
    lead = abs(mpmath.mpf(p.leading.numerator) / p.leading.denominator)
    for i, ci in enumerate(centers):
        val = p(ComplexRational._raw(*ci)) if ci[1] else ComplexRational._raw(p(ci[0]), Fraction(0))
        a2 = val.abs2()
        num = mpmath.sqrt(mpmath.mpf(a2.numerator) / a2.denominator)
        den = lead
        zi = mpmath.mpc(mpmath.mpf(ci[0].numerator) / ci[0].denominator, mpmath.mpf(ci[1].numerator) / ci[1].denominator)
        for j, cj in enumerate(centers):
            if j != i:
                zj = mpmath.mpc(mpmath.mpf(cj[0].numerator) / cj[0].denominator, mpmath.mpf(cj[1].numerator) / cj[1].denominator)
                den *= abs(zi - zj)
        if den == 0:
            radii.append(None)
            continue
        r = d * num / den * (1 + mpmath.mpf(2) ** -40)
        radii.append(_to_fraction(r) + Fraction(1, 2**200))
    return radii


def _locate_squarefree(q, eps, multiplicity, counter=None):
    """Disks for the roots of one squarefree factor; returns (disks, ok)."""
    d = q.degree
    if d == 1:
        root = -q.coeffs[0] / q.coeffs[1]
        return [RootDisk((root, Fraction(0)), Fraction(0), True, multiplicity)], True

    counter = counter or _counter(q)
    if isinstance(counter, _BracketCounter):
        intervals = counter.brackets()
    else:
        intervals = isolate_real_roots(q)
    real = []
    for a, b in intervals:
        a, b = refine_real_root(counter, a, b, 2 * eps)
        real.append(((a + b) / 2, (b - a) / 2))
    disks = [RootDisk((c, Fraction(0)), r, True, multiplicity) for c, r in real]
    n_complex = d - len(real)
    if n_complex == 0:
        return disks, True

    # Non-real roots: iterate, certify, and raise the working precision on failure.
    digits = max(30, int(-math.log10(float(eps))) + 20) if eps < 1 else 30
    for _ in range(4):
        with mpmath.workdps(digits):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in q.coeffs]
            zs, converged = _aberth(coeffs, digits)
            zs.sort(key=lambda z: -abs(z.imag))
            approx = zs[:n_complex]
            centers = [(c, Fraction(0)) for c, _ in real] + [
                (_to_fraction(z.real), _to_fraction(z.imag)) for z in approx
            ]
            radii = _inclusion_radii(q, centers)
        cplx = list(zip(centers[len(real):], radii[len(real):]))
        ok = converged and all(
            r is not None and r <= eps and r < abs(c[1]) for c, r in cplx
        )
        # Disks of distinct roots must not overlap for the count to be certified.
        if ok:
            for i in range(len(cplx)):
                for j in range(i + 1, len(cplx)):
                    (ci, ri), (cj, rj) = cplx[i], cplx[j]
                    dist2 = (ci[0] - cj[0]) ** 2 + (ci[1] - cj[1]) ** 2
                    if dist2 <= (ri + rj) ** 2:
                        ok = False
        if ok:
            break
        digits *= 2
    for c, r in cplx:
        disks.append(RootDisk(c, r if r is not None else Fraction(-1), False, multiplicity))
    return disks, ok


def locate_roots(p, precision=Fraction(1, 10**12)):
    """All roots of ``p`` as certified disks of radius at most ``precision``.

    Each distinct root is reported once with its multiplicity, so the
    multiplicities sum to ``deg p``. Multiplicities come from an exact
    squarefree decomposition.

    Returns
    -------
    RootLocation
        ``converged`` is False when some non-real disk could not be certified
        within the iteration cap; the partial disks are still returned.
    """
    if p.is_zero():
        raise ValueError("cannot locate the roots of the zero polynomial")
    eps = as_rational(precision)
    if eps <= 0:
        raise ValueError("precision must be positive")
    if p.degree >= 2:
        fast = _real_bracket_counter(p.integer_form()[1])
        if fast is not None:
            # All roots real and simple: no squarefree decomposition needed.
            disks, ok = _locate_squarefree(p, eps, 1, fast)
            return RootLocation(tuple(sorted(disks, key=lambda r: r.center)), ok)
    out = []
    ok_all = True
    for factor, mult in squarefree_decomposition(p):
        disks, ok = _locate_squarefree(factor, eps, mult)
        out.extend(disks)
        ok_all = ok_all and ok
    out.sort(key=lambda r: (r.center[0], r.center[1]))
    return RootLocation(tuple(out), ok_all)


def refine_root(p, disk, precision):
    """Shrink the disk of a simple real root of ``p`` to radius ``<= precision``.

    Non-real disks (and multiple roots) are relocated with
    :func:`locate_roots` and the nearest resulting disk is returned.
    """
    eps = as_rational(precision)
    if disk.radius <= eps:
        return disk
    if disk.is_real and disk.multiplicity == 1:
        _, ints = p.integer_form()
        kern = _backend.kernels
        c, r = disk.center[0], disk.radius
        a, b = c - r, c + r
        sa = kern.int_sign_at(ints, a.numerator, a.denominator)
        sb = kern.int_sign_at(ints, b.numerator, b.denominator)
        if sa == 0:
            return RootDisk((a, Fraction(0)), Fraction(0), True, 1)
        if sb == 0:
            return RootDisk((b, Fraction(0)), Fraction(0), True, 1)
        if sa != sb:
            while (b - a) / 2 > eps:
                mid = (a + b) / 2
                sm = kern.int_sign_at(ints, mid.numerator, mid.denominator)
                if sm == 0:
                    return RootDisk((mid, Fraction(0)), Fraction(0), True, 1)
                if sm == sa:
                    a = mid
                else:
                    b = mid
            return RootDisk(((a + b) / 2, Fraction(0)), (b - a) / 2, True, 1)
    target = disk.as_complex()
    loc = locate_roots(p, eps)
    return min(loc.roots, key=lambda d: abs(d.as_complex() - target))
