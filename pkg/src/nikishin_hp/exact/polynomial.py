"""Dense univariate polynomials over the rationals.

Coefficients are stored in ascending order as :class:`fractions.Fraction`
values with no trailing zeros, so the zero polynomial is the empty tuple.
Its degree is ``NEG_INF`` rather than ``-1``.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .. import _backend

NEG_INF = float("-inf")


def as_rational(value):
    """Coerce ``value`` to a Fraction.

    Accepts ints, Fractions and strings of the form ``"p/q"`` or ``"p"``.
    Floats are rejected to keep every coefficient exactly what the caller
    wrote down.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"malformed rational literal {value!r}") from None
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals; pass 'p/q' strings")
    try:
        # gmpy2 and other exact numeric types
        return Fraction(int(value.numerator), int(value.denominator))
    except AttributeError:
        raise TypeError(f"cannot interpret {value!r} as a rational") from None


def _strip(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class Polynomial:
    """Immutable polynomial with exact rational coefficients.

    Parameters
    ----------
    coeffs : iterable
        Coefficients in ascending order. Anything accepted by
        :func:`as_rational` may be used.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        self.coeffs = tuple(_strip([as_rational(c) for c in coeffs]))
        self._hash = None

    @classmethod
    def _from_fractions(cls, coeffs):
        obj = cls.__new__(cls)
        obj.coeffs = tuple(_strip(list(coeffs)))
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots, leading=1):
        p = cls.constant(leading)
        for r in roots:
            p = p * cls((-as_rational(r), 1))
        return p

    @classmethod
    def from_json(cls, data):
        return cls(data)

    def to_json(self):
        return [str(c) for c in self.coeffs]

    # ------------------------------------------------------------------ basics

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"({c})*{mono}")
            else:
                terms.append(f"({c})" if c.denominator != 1 else str(c))
        return " + ".join(terms).replace("+ -", "- ")

    # -------------------------------------------------------------- arithmetic

    @staticmethod
    def _coerce(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction, str)):
            return Polynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._from_fractions(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_fractions([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial()
            return Polynomial._from_fractions([c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Polynomial._from_fractions(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        nb = len(b)
        if len(r) < nb:
            return Polynomial(), self
        inv_lead = 1 / b[-1]
        q = [Fraction(0)] * (len(r) - nb + 1)
        for k in range(len(r) - nb, -1, -1):
            coef = r[k + nb - 1] * inv_lead
            q[k] = coef
            if coef:
                for i in range(nb):
                    r[k + i] -= coef * b[i]
        return Polynomial._from_fractions(q), Polynomial._from_fractions(r[: nb - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Quotient, raising if ``other`` does not divide ``self``."""
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self):
        return Polynomial._from_fractions([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return Polynomial._from_fractions([c / lead for c in self.coeffs])

    def shift_degree(self, k):
        """Multiply by ``z**k``."""
        if not self.coeffs:
            return self
        return Polynomial._from_fractions([Fraction(0)] * k + list(self.coeffs))

    # --------------------------------------------------------- integer forms

    def integer_form(self):
        """Split into ``(content, ints)`` with ``self == content * Polynomial(ints)``.

        ``content`` is a positive Fraction and ``ints`` a primitive integer
        coefficient list, so the sign of ``self`` is carried by ``ints``.
        """
        if not self.coeffs:
            return Fraction(1), []
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [c.numerator * (den // c.denominator) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        return Fraction(g, den), [v // g for v in ints]

    @classmethod
    def from_ints(cls, ints):
        return cls._from_fractions([Fraction(v) for v in ints])


# ---------------------------------------------------------------- helpers


def int_content(ints):
    return reduce(gcd, ints, 0)


def int_primitive(ints):
    """Divide out the (positive) content; the sign of the polynomial is kept."""
    g = int_content(ints)
    if g in (0, 1):
        return list(ints)
    return [v // g for v in ints]


_GCD_PRIMES = (2**61 - 1, 2**59 - 55, 2**57 - 13)


def _coprime_mod(a, b, prime):
    """True if ``a`` and ``b`` are certified coprime by their gcd modulo ``prime``.

    When ``prime`` divides neither leading coefficient, the degree of the
    gcd modulo ``prime`` bounds the degree of the integer gcd from above.
    """
    if a[-1] % prime == 0 or b[-1] % prime == 0:
        return False
    x = [v % prime for v in a]
    y = [v % prime for v in b]
    while len(y) > 1 or (y and y[0] == 0):
        while y and y[-1] == 0:
            y.pop()
        if not y:
            return False
        if len(y) == 1:
            return True
        inv = pow(y[-1], -1, prime)
        while len(x) >= len(y):
            f = x[-1] * inv % prime
            shift = len(x) - len(y)
            for i, v in enumerate(y):
                x[shift + i] = (x[shift + i] - f * v) % prime
            x.pop()
            while x and x[-1] == 0:
                x.pop()
        x, y = y, x
        if not y:
            return False
    return bool(y)


def _int_gcd(a, b):
    """Primitive-PRS gcd of two nonzero primitive integer polynomials.

    A modular check settles the common coprime case without the PRS.
    """
    if len(a) < len(b):
        a, b = b, a
    if len(b) > 1 and any(_coprime_mod(a, b, p) for p in _GCD_PRIMES):
        return [1]
    while b:
        if len(b) == 1:
            return [1]
        r, _ = _backend.kernels.int_prem(a, b)
        a, b = b, int_primitive(r)
    if a[-1] < 0:
        a = [-v for v in a]
    return a


def poly_gcd(p, q):
    """Monic greatest common divisor.

    Computed with a primitive pseudo-remainder sequence over the integers,
    which keeps coefficient growth under control for the large-denominator
    polynomials that show up in Cauchy transforms.

    Raises
    ------
    ValueError
        If both inputs are the zero polynomial.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    _, a = p.integer_form()
    _, b = q.integer_form()
    return Polynomial.from_ints(_int_gcd(a, b)).monic()


def poly_lcm(ps):
    """Monic least common multiple of a nonempty list of nonzero polynomials."""
    ps = list(ps)
    if not ps:
        raise ValueError("lcm of an empty list")
    result = Polynomial.constant(1)
    for p in ps:
        if p.is_zero():
            raise ValueError("lcm is undefined for the zero polynomial")
        g = poly_gcd(result, p)
        result = (result * p.exact_div(g)).monic()
    return result


def squarefree_decomposition(p):
    """Yun's algorithm: list of ``(factor, multiplicity)`` with monic squarefree factors.

    The product of ``factor**multiplicity`` equals ``p.monic()``; factors
    of degree zero are omitted.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    p = p.monic()
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        aa = poly_gcd(b, d)
        b = b.exact_div(aa)
        c = d.exact_div(aa)
        d = c - b.derivative()
        if aa.degree > 0:
            out.append((aa.monic(), i))
        i += 1
    return out


def squarefree_part(p):
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    if p.degree <= 0:
        return Polynomial.constant(1)
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def poly_invmod(a, m):
    """Inverse of ``a`` modulo ``m`` via the extended Euclidean algorithm.

    Raises
    ------
    ArithmeticError
        If ``a`` and ``m`` are not coprime.
    """
    r0, r1 = m, a % m
    s0, s1 = Polynomial(), Polynomial.constant(1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ArithmeticError("polynomials are not coprime")
    return (s0 * (1 / r0.leading)) % m
