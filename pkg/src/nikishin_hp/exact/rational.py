"""Rational functions, Laurent expansions at infinity, Gaussian rationals."""

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .polynomial import Polynomial, as_rational, poly_gcd

INF_ORDER = float("inf")


class ComplexRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @classmethod
    def _raw(cls, re, im):
        obj = cls.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, z):
        if isinstance(z, ComplexRational):
            return z
        if isinstance(z, (tuple, list)):
            return cls(*z)
        return cls(z)

    def __repr__(self):
        return f"ComplexRational({self.re}, {self.im})"

    def __eq__(self, other):
        if isinstance(other, ComplexRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        if isinstance(other, ComplexRational):
            return ComplexRational._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return ComplexRational._raw(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, ComplexRational):
            return ComplexRational._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return ComplexRational._raw(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ComplexRational):
            return ComplexRational._raw(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return ComplexRational._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return ComplexRational._raw(self.re, -self.im)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexRational._raw(self.re / other, self.im / other)
        if isinstance(other, ComplexRational):
            n = other.abs2()
            if not n:
                raise ZeroDivisionError("complex division by zero")
            t = self * other.conjugate()
            return ComplexRational._raw(t.re / n, t.im / n)
        return NotImplemented

    def __rtruediv__(self, other):
        return ComplexRational.coerce(other) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def decimal_abs(z, digits=40):
    """``|z|`` for an exact rational or Gaussian rational, as a Decimal."""
    if isinstance(z, ComplexRational):
        sq = z.abs2()
    else:
        sq = as_rational(z) ** 2
    with localcontext() as ctx:
        ctx.prec = digits + 10
        val = (Decimal(sq.numerator) / Decimal(sq.denominator)).sqrt()
        ctx.prec = digits
        return +val


class RationalFunction:
    """Quotient ``num/den`` of exact polynomials.

    Stored reduced: ``num`` and ``den`` coprime and ``den`` monic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Polynomial) else Polynomial.constant(num)
        if den is None:
            den = Polynomial.constant(1)
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, Polynomial.constant(1)
            return
        if den.degree > 0 and num.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lead = den.leading
        if lead != 1:
            num, den = num * (1 / lead), den.monic()
        self.num, self.den = num, den

    @classmethod
    def _coprime(cls, num, den):
        """Build from a pair already known to be coprime with ``den`` monic."""
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def zero(cls):
        return cls._coprime(Polynomial(), Polynomial.constant(1))

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Polynomial, int, Fraction)):
            return self == RationalFunction(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, z):
        d = self.den(z)
        if not d:
            raise ZeroDivisionError(f"pole at {z!r}")
        return self.num(z) / d

    @staticmethod
    def _lift(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, int, Fraction)):
            return RationalFunction(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._coprime(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def order_at_infinity(self):
        """``deg den - deg num``; ``inf`` for the zero function."""
        if self.num.is_zero():
            return INF_ORDER
        return self.den.degree - self.num.degree

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(Polynomial(data["num"]), Polynomial(data["den"]))


@dataclass(frozen=True)
class LaurentExpansion:
    """``polynomial_part + sum(tail[j] / z**(j+1))`` truncated after ``order``."""

    polynomial_part: Polynomial
    tail: tuple
    order: int

    def coefficient(self, power):
        """Coefficient of ``z**power`` (``power >= -(order+1)``)."""
        if power >= 0:
            return self.polynomial_part[power]
        j = -power - 1
        if j > self.order:
            raise IndexError(f"expansion only known through z^-{self.order + 1}")
        return self.tail[j]


def tail_coefficients(num, den, count):
    """First ``count`` coefficients ``c_j`` of ``num/den = sum c_j z^-(j+1)``.

    Requires ``deg num < deg den``; evaluated by the long-division recurrence.
    """
    q = den.degree
    d = den.coeffs
    r = num.coeffs
    inv = 1 / d[q]
    out = []
    for k in range(count):
        idx = q - 1 - k
        acc = r[idx] if 0 <= idx < len(r) else Fraction(0)
        for j in range(max(0, k - q), k):
            di = q - k + j
            if 0 <= di <= q:
                acc -= d[di] * out[j]
        out.append(acc * inv)
    return out


def laurent_at_infinity(rf, order):
    """Exact expansion of ``rf`` at infinity through ``z**-(order+1)``.

    Parameters
    ----------
    rf : RationalFunction or tuple of two Polynomial
        The function to expand; an unreduced ``(num, den)`` pair is allowed.
    order : int
        Index ``K`` of the last tail coefficient ``c_K`` returned.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    num, den = (rf.num, rf.den) if isinstance(rf, RationalFunction) else rf
    poly, rem = divmod(num, den)
    return LaurentExpansion(poly, tuple(tail_coefficients(rem, den, order + 1)), order)
