"""Linear forms, their vanishing orders at infinity, and exact identities."""

from dataclasses import dataclass
from fractions import Fraction

from ..exact import (
    INF_ORDER,
    Polynomial,
    RationalFunction,
    as_rational,
    laurent_at_infinity,
    locate_roots,
    poly_gcd,
    squarefree_decomposition,
    sturm_root_count,
)
from ..nikishin import cauchy_as_rational, cauchy_eval, chain


def _sign(k):
    return -1 if k % 2 else 1


# ------------------------------------------------------------- target f


def target_f(gen, perturbations):
    """``f = ŝ_{m,1} - sum_{k<m} (-1)^k ŝ_{m,k+1} r_k - (-1)^m r_m``, reduced.

    Every ``ŝ_{m,k}`` shares the denominator ``Q_m = prod(z - x)`` over the
    atoms of ``σ_m``, so the sum is formed over ``Q_m * T`` and reduced once.
    """
    m = gen.m
    rs = [p.as_rational() for p in perturbations]
    den_q = cauchy_as_rational(gen.sigma(m)).den
    T = Polynomial.constant(1)
    for r in rs:
        if not r.is_zero():
            T = T * r.den.exact_div(poly_gcd(T, r.den))
    num = cauchy_as_rational(chain(gen, m, 1)).num * T
    for k in range(1, m):
        r = rs[k - 1]
        if r.is_zero():
            continue
        s = cauchy_as_rational(chain(gen, m, k + 1))
        num = num - s.num * r.num * T.exact_div(r.den) * _sign(k)
    r = rs[m - 1]
    if not r.is_zero():
        num = num - den_q * r.num * T.exact_div(r.den) * _sign(m)
    return RationalFunction(num, den_q * T)


def evaluate_f(gen, perturbations, z):
    """Pointwise value of ``f`` from atom sums; avoids building ``f``."""
    m = gen.m
    val = cauchy_eval(chain(gen, m, 1), z)
    for k in range(1, m):
        p = perturbations[k - 1]
        if not p.is_zero():
            val = val - _sign(k) * cauchy_eval(chain(gen, m, k + 1), z) * p.as_rational()(z)
    p = perturbations[m - 1]
    if not p.is_zero():
        val = val - _sign(m) * p.as_rational()(z)
    return val


@dataclass(frozen=True)
class PoleCheck:
    """Outcome of the pole-count hypothesis on ``f``.

    ``roots`` lists, for each distinct zero of ``T``, its location, its
    multiplicity ``tau`` and whether ``(z - ζ)^tau f`` has a nonzero limit.
    """

    roots: tuple
    poles_off_interval: int
    D: int
    pairwise_coprime: bool | None

    @property
    def limits_nonzero(self):
        return all(r["nonzero_limit"] for r in self.roots)

    @property
    def satisfied(self):
        return self.limits_nonzero and self.poles_off_interval == self.D

    def to_json(self):
        return {
            "satisfied": self.satisfied,
            "poles_off_interval": self.poles_off_interval,
            "D": self.D,
            "pairwise_coprime": self.pairwise_coprime,
            "roots": [dict(r) for r in self.roots],
        }


def _root_entries(p, tau, ok):
    out = []
    for disk in locate_roots(p, Fraction(1, 10**15)):
        out.append(
            {
                "center": [str(disk.center[0]), str(disk.center[1])],
                "approx": [float(disk.center[0]), float(disk.center[1])],
                "multiplicity": tau,
                "nonzero_limit": ok,
            }
        )
    return out


def pole_hypothesis_check(f, T, intervals, denominators=None):
    """Decide exactly whether ``f`` has a pole of full order at each zero of ``T``.

    A zero ``ζ`` of ``T`` of multiplicity ``tau`` passes when ``ζ`` is a zero
    of the reduced denominator of ``f`` of multiplicity at least ``tau``:
    the common zeros of the squarefree factor and the first ``tau``
    derivatives of that denominator. Also counts the poles of ``f`` (with
    multiplicity) off the last interval and, when the ``t_k`` are given,
    whether they are pairwise coprime.

    Parameters
    ----------
    f : RationalFunction
    T : Polynomial
    intervals : sequence of (a, b)
        Only the last interval is used.
    denominators : sequence of Polynomial, optional
    """
    den = f.den
    roots = []
    if T.degree > 0:
        for factor, tau in squarefree_decomposition(T):
            g = factor
            d = den
            for _ in range(tau):
                g = poly_gcd(g, d) if not d.is_zero() else g
                d = d.derivative()
                if g.degree <= 0:
                    break
            good = g if g.degree > 0 else Polynomial.constant(1)
            bad = factor.exact_div(good)
            if good.degree > 0:
                roots.extend(_root_entries(good, tau, True))
            if bad.degree > 0:
                roots.extend(_root_entries(bad, tau, False))
    lo, hi = (as_rational(v) for v in intervals[-1])
    on = 0
    for factor, mult in squarefree_decomposition(den):
        on += mult * sturm_root_count(factor, lo, hi)
    poles_off = max(den.degree, 0) - on
    coprime = None
    if denominators is not None:
        ts = [t for t in denominators if t.degree > 0]
        coprime = all(poly_gcd(a, b).degree == 0 for i, a in enumerate(ts) for b in ts[i + 1 :])
    return PoleCheck(tuple(roots), poles_off, max(T.degree, 0), coprime)


# --------------------------------------------------------------- forms


@dataclass(frozen=True)
class LinearForm:
    """``num/den`` kept unreduced; the order at infinity needs no gcd."""

    num: Polynomial
    den: Polynomial

    def order(self):
        if self.num.is_zero():
            return INF_ORDER
        return self.den.degree - self.num.degree

    def laurent(self, order):
        return laurent_at_infinity((self.num, self.den), order)

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def as_rational(self):
        return RationalFunction(self.num, self.den)


@dataclass(frozen=True)
class LevelForms:
    """The forms ``𝒜_{n,0..m}``, ``𝓛_{n,0} = T 𝒜_{n,0}`` and the polynomials ``p_{n,k}``."""

    A: tuple
    L0: LinearForm
    p: tuple


def level_forms(solution, inst):
    """Build the forms of a solution exactly.

    All ``ŝ_{j+1,k}`` with a common first index share the denominator
    ``Q_{j+1}`` over the atoms of ``σ_{j+1}``, so each form is one
    polynomial over ``Q_{j+1}`` (times ``T`` at level 0).
    """
    gen, m, a, T = inst.gen, inst.m, solution.a, inst.T
    p0 = a[0] * T
    for k in range(1, m + 1):
        r = inst.perturbations[k - 1]
        if not r.is_zero():
            p0 = p0 + a[k] * r.v * T.exact_div(r.t) * _sign(k)
    p = (p0,) + tuple(a[k] * T for k in range(1, m + 1))

    q = cauchy_as_rational(gen.sigma(1)).den
    num = p0 * q
    for k in range(1, m + 1):
        num = num + p[k] * cauchy_as_rational(chain(gen, 1, k)).num * _sign(k)
    L0 = LinearForm(num, q)
    forms = [LinearForm(num, q * T)]
    for j in range(1, m):
        qj = cauchy_as_rational(gen.sigma(j + 1)).den
        numj = a[j] * qj * _sign(j)
        for k in range(j + 1, m + 1):
            numj = numj + a[k] * cauchy_as_rational(chain(gen, j + 1, k)).num * _sign(k)
        forms.append(LinearForm(numj, qj))
    forms.append(LinearForm(a[m] * _sign(m), Polynomial.constant(1)))
    return LevelForms(tuple(forms), L0, p)


def required_orders(n, m):
    """Orders at infinity demanded by the interpolation conditions."""
    return (n + 1,) + (1,) * (m - 1)


def _row_index(n, level, power):
    if level == 0:
        return n - 1 - power if -n <= power <= n - 1 else None
    return 2 * n + (level - 1) * n + (n - 1 - power) if 0 <= power <= n - 1 else None


@dataclass(frozen=True)
class FormOrders:
    """Exact orders of ``𝒜_{n,0..m-1}`` at infinity and any shortfall.

    Each defect names the level, the power of ``z`` whose coefficient should
    vanish but does not, and the corresponding row of the assembled system.
    """

    orders: tuple
    required: tuple
    defects: tuple

    @property
    def ok(self):
        return not self.defects

    def __iter__(self):
        return iter(self.orders)

    def to_json(self):
        return {
            "ok": self.ok,
            "orders": [o if o != INF_ORDER else "inf" for o in self.orders],
            "required": list(self.required),
            "defects": [dict(d) for d in self.defects],
        }


def form_orders(solution, inst):
    """Verify the interpolation conditions with exact Laurent orders.

    Returns
    -------
    FormOrders
        ``ok`` is True iff every ``𝒜_{n,j}``, ``j < m``, meets its order.
    """
    n, m = inst.n, inst.m
    forms = level_forms(solution, inst).A
    required = required_orders(n, m)
    orders, defects = [], []
    for j in range(m):
        o = forms[j].order()
        orders.append(o)
        if o < required[j]:
            # Leading surviving term is z^(-o); that is the first failing row.
            power = -o
            defects.append(
                {
                    "level": j,
                    "order": o,
                    "required": required[j],
                    "power": power,
                    "row": _row_index(n, j, power),
                }
            )
    return FormOrders(tuple(orders), required, tuple(defects))


def orthogonality_check(solution, inst, j, w=None, nu_max=None):
    """Exact moments ``sum x^ν 𝒜_{n,j+1}(x) w(x)^{-1} σ_{j+1}({x})`` over atoms.

    At level 0 the ``T``-scaled forms are used (``𝓛_{n,0} = T 𝒜_{n,0}`` and
    ``T 𝒜_{n,1}``) so that the outer form is analytic off ``Δ_1``. With
    ``N`` the guaranteed order of the outer form divided by ``w`` (that is
    ``n + 1 - D + deg w`` at level 0 and ``1 + deg w`` above), the moments
    for ``ν = 0..N-2`` vanish whenever the zeros of ``w`` are zeros of the
    outer form off ``Δ_{j+1}``. ``nu_max`` overrides the upper index.

    Returns
    -------
    list of (int, Fraction)
    """
    n, m = inst.n, inst.m
    if not 0 <= j < m:
        raise IndexError(f"level j must lie in 0..{m - 1}")
    w = Polynomial.constant(1) if w is None else w
    if w.is_zero():
        raise ValueError("w must be nonzero")
    a = solution.a
    mu = inst.gen.sigma(j + 1)
    base = n + 1 - inst.D if j == 0 else 1
    top = base + w.degree - 2 if nu_max is None else nu_max
    inner_ch = [chain(inst.gen, j + 2, k) for k in range(j + 2, m + 1)]
    out = [Fraction(0)] * (top + 1) if top >= 0 else []
    if top < 0:
        return []
    for x, mass in mu.atoms:
        wx = w(x)
        if wx == 0:
            raise ZeroDivisionError(f"w vanishes at the atom {x}")
        val = a[j + 1](x) * _sign(j + 1)
        for k, ch in zip(range(j + 2, m + 1), inner_ch):
            val += _sign(k) * a[k](x) * cauchy_eval(ch, x)
        if j == 0:
            val *= inst.T(x)
        weight = val * mass / wx
        for nu in range(top + 1):
            out[nu] += weight
            weight *= x
    return list(enumerate(out))


def telescoping_residual(gen, j):
    """``(-1)^j ŝ_{m,j+1} + sum_{k=j+1}^{m-1} (-1)^k ŝ_{m,k+1} ŝ_{j+1,k} + (-1)^m ŝ_{j+1,m}``.

    Returned as an exact rational function, identically zero for every
    generator.
    """
    m = gen.m
    if not 1 <= j <= m - 1:
        raise IndexError(f"need 1 <= j <= m - 1 = {m - 1}")
    total = cauchy_as_rational(chain(gen, m, j + 1)) * _sign(j)
    for k in range(j + 1, m):
        total = total + cauchy_as_rational(chain(gen, m, k + 1)) * cauchy_as_rational(chain(gen, j + 1, k)) * _sign(k)
    return total + cauchy_as_rational(chain(gen, j + 1, m)) * _sign(m)
