"""Assembly and exact solution of the multi-level Hermite-Padé interpolation system.

For a generator ``σ_1..σ_m``, perturbations ``r_k = v_k/t_k`` and an order
``n`` the unknowns are ``a_{n,0..m-1}`` (degree ``<= n-1``) and ``a_{n,m}``
(degree ``<= n``). The level-0 form

    a_{n,0} + sum_k (-1)^k a_{n,k} (ŝ_{1,k} + r_k)

must be ``O(z^-(n+1))`` and each level-``j`` form

    (-1)^j a_{n,j} + sum_{k>j} (-1)^k a_{n,k} ŝ_{j+1,k}

must be ``O(1/z)``: ``n(m+1)`` homogeneous equations in ``n(m+1)+1``
unknowns.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .exact import (
    Polynomial,
    RationalFunction,
    laurent_at_infinity,
    locate_roots,
    poly_gcd,
    poly_lcm,
    sturm_root_count,
)
from .nikishin import chain, moments


class InstanceError(ValueError):
    """Invalid problem instance."""


@dataclass(frozen=True)
class Perturbation:
    """Proper rational function ``v/t`` with ``t`` monic and ``gcd(v, t) = 1``.

    ``v = 0`` encodes ``r ≡ 0`` and forces ``t = 1``.
    """

    v: Polynomial
    t: Polynomial

    def __init__(self, v, t=None):
        v = v if isinstance(v, Polynomial) else Polynomial(v)
        t = Polynomial.constant(1) if t is None else (t if isinstance(t, Polynomial) else Polynomial(t))
        if t.is_zero():
            raise InstanceError("perturbation denominator is zero")
        if v.is_zero():
            t = Polynomial.constant(1)
        else:
            if not v.degree < t.degree:
                raise InstanceError(f"perturbation must be proper: deg v = {v.degree}, deg t = {t.degree}")
            if poly_gcd(v, t).degree > 0:
                raise InstanceError("perturbation numerator and denominator must be coprime")
            lead = t.leading
            v, t = v * (1 / lead), t.monic()
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "t", t)

    @classmethod
    def zero(cls):
        return cls(Polynomial())

    def is_zero(self):
        return self.v.is_zero()

    def as_rational(self):
        return RationalFunction._coprime(self.v, self.t)

    def to_json(self):
        return {"v": self.v.to_json(), "t": self.t.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(Polynomial(data.get("v", [])), Polynomial(data.get("t", ["1"])))


@dataclass(frozen=True)
class ProblemInstance:
    """Generator, perturbations and order, with ``T = lcm(t_k)`` and ``D = deg T``.

    ``t_zeros_outside_delta1`` / ``t_zeros_outside_deltam`` record whether
    the zeros of ``T`` avoid the first and last intervals.
    """

    gen: object
    perturbations: tuple
    n: int
    T: Polynomial
    D: int
    t_zeros_outside_delta1: bool
    t_zeros_outside_deltam: bool
    t_roots: tuple = field(compare=False, default=())

    @property
    def m(self):
        return self.gen.m

    def hypotheses_hold(self):
        return self.t_zeros_outside_delta1 and self.t_zeros_outside_deltam

    def with_n(self, n):
        return build_instance(self.gen, self.perturbations, n)


def _t_location(T, interval):
    if T.degree <= 0:
        return True
    return sturm_root_count(T, interval[0], interval[1]) == 0


def build_instance(gen, perturbations, n):
    """Validate inputs and derive ``T``, ``D`` and the zero-location flags.

    Raises
    ------
    InstanceError
        On length mismatch, ``n < 1`` or ``n < 2D``.
    """
    perturbations = tuple(p if isinstance(p, Perturbation) else Perturbation(*p) for p in perturbations)
    if len(perturbations) != gen.m:
        raise InstanceError(f"expected {gen.m} perturbations, got {len(perturbations)}")
    if not isinstance(n, int) or n < 1:
        raise InstanceError("n must be a positive integer")
    T = poly_lcm([p.t for p in perturbations])
    D = T.degree
    if n < 2 * D:
        raise InstanceError(f"n = {n} is below 2D = {2 * D}")
    roots = tuple(locate_roots(T, Fraction(1, 10**80)).roots) if D > 0 else ()
    return ProblemInstance(
        gen=gen,
        perturbations=perturbations,
        n=n,
        T=T,
        D=D,
        t_zeros_outside_delta1=_t_location(T, gen.interval(1)),
        t_zeros_outside_deltam=_t_location(T, gen.interval(gen.m)),
        t_roots=roots,
    )


@dataclass(frozen=True)
class AssembledSystem:
    """Dense exact matrix with row and column bookkeeping.

    ``column_map[c] = (j, i)``: coefficient of ``z**i`` in ``a_{n,j}``.
    ``row_map[r] = (level, power)``: coefficient of ``z**power`` in the
    level form that must vanish.
    """

    matrix: tuple
    column_map: tuple
    row_map: tuple
    n: int
    m: int

    @property
    def shape(self):
        return len(self.matrix), len(self.column_map)

    def to_json(self):
        return {
            "n": self.n,
            "m": self.m,
            "columns": [list(c) for c in self.column_map],
            "rows": [list(r) for r in self.row_map],
            "matrix": [[str(v) for v in row] for row in self.matrix],
        }


def column_layout(n, m):
    cols = []
    for j in range(m + 1):
        for i in range(n + 1 if j == m else n):
            cols.append((j, i))
    return tuple(cols)


def _level0_coefficients(inst, k, count):
    """Expansion coefficients at infinity of ``ŝ_{1,k} + r_k``."""
    c = moments(chain(inst.gen, 1, k), count - 1)
    r = inst.perturbations[k - 1]
    if not r.is_zero():
        tail = laurent_at_infinity(r.as_rational(), count - 1).tail
        c = [a + b for a, b in zip(c, tail)]
    return c


def assemble(inst):
    """Build the ``n(m+1) x (n(m+1)+1)`` interpolation matrix.

    Rows are ordered level 0 first (powers ``n-1`` down to ``-n``), then
    levels ``1..m-1`` (powers ``n-1`` down to ``0``).
    """
    n, m = inst.n, inst.m
    cols = column_layout(n, m)
    index = {c: k for k, c in enumerate(cols)}
    ncols = len(cols)
    zero = Fraction(0)

    rows, row_map = [], []
    level0 = {k: _level0_coefficients(inst, k, 2 * n) for k in range(1, m + 1)}
    for p in range(n - 1, -n - 1, -1):
        row = [zero] * ncols
        if p >= 0:
            row[index[(0, p)]] = Fraction(1)
        for k in range(1, m + 1):
            sign = -1 if k % 2 else 1
            g = level0[k]
            for i in range(n + 1 if k == m else n):
                q = i - p - 1
                if q >= 0:
                    row[index[(k, i)]] = sign * g[q]
        rows.append(tuple(row))
        row_map.append((0, p))

    for j in range(1, m):
        mom = {k: moments(chain(inst.gen, j + 1, k), n) for k in range(j + 1, m + 1)}
        for p in range(n - 1, -1, -1):
            row = [zero] * ncols
            row[index[(j, p)]] = Fraction(-1 if j % 2 else 1)
            for k in range(j + 1, m + 1):
                sign = -1 if k % 2 else 1
                for i in range(n + 1 if k == m else n):
                    q = i - p - 1
                    if q >= 0:
                        row[index[(k, i)]] = sign * mom[k][q]
            rows.append(tuple(row))
            row_map.append((j, p))
    return AssembledSystem(tuple(rows), cols, tuple(row_map), n, m)


def nullspace(system):
    """Exact kernel basis of an assembled system (or a plain matrix)."""
    if isinstance(system, AssembledSystem):
        return linalg.nullspace(system.matrix, len(system.column_map))
    return linalg.nullspace(system)


@dataclass(frozen=True)
class HPSolution:
    """Polynomials ``a_{n,0..m}`` normalised up to the free constant multiple."""

    a: tuple
    nullspace_dim: int
    normalization: str
    n: int

    @property
    def m(self):
        return len(self.a) - 1

    @property
    def last(self):
        return self.a[-1]

    def to_json(self):
        return {
            "n": self.n,
            "m": self.m,
            "nullspace_dim": self.nullspace_dim,
            "normalization": self.normalization,
            "a": [p.to_json() for p in self.a],
        }

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Polynomial(p) for p in data["a"]), data["nullspace_dim"], data["normalization"], data["n"])


def _vector_to_polys(vec, n, m):
    polys, k = [], 0
    for j in range(m + 1):
        size = n + 1 if j == m else n
        polys.append(Polynomial._from_fractions(vec[k : k + size]))
        k += size
    return polys


def _priority_order(n, m):
    """Coordinates ordered so that echelon form minimises ``deg a_{n,m}`` last."""
    cols = column_layout(n, m)
    index = {c: k for k, c in enumerate(cols)}
    order = []
    for j in range(m, -1, -1):
        top = n if j == m else n - 1
        order.extend(index[(j, i)] for i in range(top, -1, -1))
    return order


def _select(basis, n, m):
    """Deterministic kernel vector with the smallest possible ``deg a_{n,m}``.

    The basis is brought to echelon form with respect to the coordinates of
    ``a_{n,m}`` from the top coefficient down (then the lower levels); the
    vector whose pivot comes last has the most vanishing top coefficients
    of ``a_{n,m}`` among all kernel elements.
    """
    order = _priority_order(n, m)
    vecs = [list(v) for v in basis]
    echelon = []
    for c in order:
        piv = next((v for v in vecs if v[c]), None)
        if piv is None:
            continue
        vecs.remove(piv)
        for v in vecs:
            if v[c]:
                f = v[c] / piv[c]
                for k in range(len(v)):
                    if piv[k]:
                        v[k] -= f * piv[k]
        echelon.append(piv)
        if not vecs:
            break
    return echelon[-1]


def extract_solution(inst, basis):
    """Pick and normalise one kernel vector.

    A one-dimensional kernel gives the unique solution up to scale. For
    larger kernels the vector minimising ``deg a_{n,m}`` is chosen and the
    dimension is recorded. The highest-index nonzero polynomial is made
    monic; the tag is ``"monic-last"`` when that is ``a_{n,m}`` of full
    degree ``n`` and ``"unit-vector"`` otherwise.
    """
    if not basis:
        raise ValueError("empty kernel basis")
    n, m = inst.n, inst.m
    vec = basis[0] if len(basis) == 1 else _select(basis, n, m)
    polys = _vector_to_polys(vec, n, m)
    lead = next((p for p in reversed(polys) if not p.is_zero()), None)
    assert lead is not None, "kernel vector is identically zero"
    scale = 1 / lead.leading
    polys = [p * scale for p in polys]
    tag = "monic-last" if polys[m].degree == n else "unit-vector"
    return HPSolution(tuple(polys), len(basis), tag, n)


def solve(inst):
    """Assemble, find the kernel and extract the normalised solution."""
    system = assemble(inst)
    return extract_solution(inst, nullspace(system))


def expected_shape(n, m):
    return n * (m + 1), n * (m + 1) + 1


__all__ = [
    "AssembledSystem",
    "HPSolution",
    "InstanceError",
    "Perturbation",
    "ProblemInstance",
    "assemble",
    "build_instance",
    "column_layout",
    "expected_shape",
    "extract_solution",
    "nullspace",
    "solve",
]
