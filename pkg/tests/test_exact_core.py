from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from nikishin_hp.exact import (
    NEG_INF,
    ComplexRational,
    Polynomial,
    RationalFunction,
    as_rational,
    isolate_real_roots,
    laurent_at_infinity,
    locate_roots,
    poly_gcd,
    poly_invmod,
    poly_lcm,
    refine_root,
    sign_changes,
    squarefree_decomposition,
    sturm_root_count,
)

Z = sympy.Symbol("z")

small = st.fractions(min_value=-9, max_value=9, max_denominator=6)
ints = st.integers(min_value=-9, max_value=9)
polys = st.lists(small, min_size=1, max_size=6).map(Polynomial)
int_polys = st.lists(ints, min_size=2, max_size=8).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def P(*coeffs):
    return Polynomial(coeffs)


def to_sympy(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * Z**i for i, c in enumerate(p.coeffs))


def from_sympy(expr):
    return Polynomial([Fraction(int(c.p), int(c.q)) for c in reversed(sympy.Poly(expr, Z).all_coeffs())])


# ---------------------------------------------------------------- basics


def test_rationals_parse_from_strings_and_stay_reduced():
    assert as_rational("6/4") == Fraction(3, 2)
    assert as_rational("-7") == -7
    p = Polynomial(["1/2", "0", "-3/9"])
    assert p.coeffs == (Fraction(1, 2), 0, Fraction(-1, 3))
    assert p.to_json() == ["1/2", "0", "-1/3"]
    assert Polynomial.from_json(p.to_json()) == p


def test_zero_polynomial_has_distinguished_degree():
    zero = Polynomial([0, 0])
    assert zero.coeffs == ()
    assert zero.degree == NEG_INF
    assert zero.degree != -1
    assert zero.degree < 0 and P(3).degree == 0


def test_rational_function_normal_form():
    rf = RationalFunction(P(-2, 2), P(-2, 0, 2))  # (2z-2)/(2z^2-2) = 1/(z+1)
    assert rf.num == P(1) and rf.den == P(1, 1)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(P(1), Polynomial())


# -------------------------------------------------------------- gcd / lcm


@pytest.mark.parametrize(
    "p, q, expected",
    [
        (P(-1, 0, 1), P(1, -2, 1), P(-1, 1)),
        (P(-5, 1), P(1), P(1)),
        (P(0, -1, 0, 1), P(-1, 0, 1), P(-1, 0, 1)),
    ],
)
def test_gcd_examples(p, q, expected):
    assert poly_gcd(p, q) == expected


def test_gcd_of_two_zeros_is_rejected():
    with pytest.raises(ValueError):
        poly_gcd(Polynomial(), Polynomial())


@pytest.mark.parametrize(
    "ps, expected",
    [
        ([P(-5, 1), P(1)], P(-5, 1)),
        ([P(-5, 1), P(-5, 1) * P(2, 1)], P(-10, -3, 1)),
        ([P(-1, 1), P(1, 1)], P(-1, 0, 1)),
    ],
)
def test_lcm_examples(ps, expected):
    assert poly_lcm(ps) == expected


def test_lcm_rejects_zero():
    with pytest.raises(ValueError):
        poly_lcm([P(1, 1), Polynomial()])


@given(nonzero_polys, nonzero_polys)
def test_gcd_divides_and_matches_sympy(p, q):
    g = poly_gcd(p, q)
    assert (p % g).is_zero() and (q % g).is_zero()
    assert g.leading == 1
    assert g == from_sympy(sympy.gcd(to_sympy(p), to_sympy(q)).as_expr() or 1) .monic()


@given(int_polys, int_polys)
def test_large_integer_gcd_agrees_with_sympy(p, q):
    # Products share a random factor, exercising the non-trivial gcd path.
    common = P(3, -1, 2)
    a, b = p * common, q * common
    assume(not a.is_zero() and not b.is_zero())
    g = poly_gcd(a, b)
    assert g == from_sympy(sympy.gcd(to_sympy(a), to_sympy(b))).monic()


@given(nonzero_polys, nonzero_polys)
def test_lcm_times_gcd_is_the_monic_product(p, q):
    assume(p.degree >= 0 and q.degree >= 0)
    assert poly_lcm([p, q]) * poly_gcd(p, q) == (p * q).monic()


@given(nonzero_polys, polys)
def test_division_identity(d, p):
    q, r = divmod(p, d)
    assert q * d + r == p
    assert r.is_zero() or r.degree < d.degree


@given(int_polys)
def test_squarefree_decomposition_reconstructs(p):
    assume(p.degree >= 1)
    sq = p * p * P(-1, 1)
    prod = Polynomial.constant(1)
    for f, k in squarefree_decomposition(sq):
        assert poly_gcd(f, f.derivative()).degree == 0
        prod = prod * f**k
    assert prod == sq.monic()


def test_invmod():
    m = P(-1, 0, 1)
    inv = poly_invmod(P(2, 1), m)
    assert (inv * P(2, 1)) % m == P(1)
    with pytest.raises(ArithmeticError):
        poly_invmod(P(-1, 1), m)


# ------------------------------------------------------------- Laurent


@pytest.mark.parametrize(
    "rf, K, poly, tail",
    [
        (RationalFunction(P(1), P(-1, 1)), 3, Polynomial(), (1, 1, 1, 1)),
        (RationalFunction(P(0, 1), P(-1, 0, 1)), 2, Polynomial(), (1, 0, 1)),
        (RationalFunction(P(1, 0, 1), P(0, 1)), 1, P(0, 1), (1, 0)),
    ],
)
def test_laurent_examples(rf, K, poly, tail):
    ex = laurent_at_infinity(rf, K)
    assert ex.polynomial_part == poly
    assert ex.tail == tuple(Fraction(c) for c in tail)
    assert ex.order == K


@given(polys, nonzero_polys, st.integers(min_value=0, max_value=30))
def test_laurent_reconstruction_error_starts_after_order(num, den, K):
    assume(den.degree >= 1)
    rf = RationalFunction(num, den)
    ex = laurent_at_infinity(rf, K)
    # polynomial_part + sum c_j z^-(j+1) as one rational function over z^(K+1)
    zK = Polynomial.constant(1).shift_degree(K + 1)
    trunc = ex.polynomial_part * zK
    for j, c in enumerate(ex.tail):
        trunc = trunc + Polynomial.constant(c).shift_degree(K - j)
    diff = rf - RationalFunction(trunc, zK)
    assert diff.is_zero() or diff.order_at_infinity() >= K + 2


def test_laurent_matches_sympy_series():
    rf = RationalFunction(P(3, -1, 2), P(1, 4, 0, 5))
    ex = laurent_at_infinity(rf, 6)
    w = sympy.Symbol("w")
    series = sympy.series((to_sympy(rf.num) / to_sympy(rf.den)).subs(Z, 1 / w), w, 0, 9).removeO()
    for j, c in enumerate(ex.tail):
        coef = series.coeff(w, j + 1)
        assert Fraction(int(coef.p), int(coef.q)) == c


# --------------------------------------------------------- real roots


@pytest.mark.parametrize(
    "p, lo, hi, inc, expected",
    [
        (P(-2, 0, 1), 0, 2, True, 1),
        (P(1, 0, 1), -10, 10, True, 0),
        (P(0, -1, 0, 1), -1, 1, False, 1),
        (P(0, -1, 0, 1), -1, 1, True, 3),
    ],
)
def test_sturm_examples(p, lo, hi, inc, expected):
    assert sturm_root_count(p, lo, hi, include_lo=inc, include_hi=inc) == expected


def test_sturm_rejects_zero_polynomial():
    with pytest.raises(ValueError):
        sturm_root_count(Polynomial(), 0, 1)


@given(int_polys, st.fractions(min_value=-5, max_value=5, max_denominator=4), st.fractions(min_value=0, max_value=6, max_denominator=4))
def test_sturm_count_matches_sympy(p, lo, width):
    assume(p.degree >= 1)
    hi = lo + width
    expected = sympy.Poly(to_sympy(p), Z).count_roots(sympy.Rational(lo.numerator, lo.denominator), sympy.Rational(hi.numerator, hi.denominator))
    assert sturm_root_count(p, lo, hi) == expected


@given(int_polys)
def test_sign_changes_count_odd_multiplicity_roots(p):
    assume(p.degree >= 1)
    q = p * p * P(-3, 1) * P(-1, 1)  # even-multiplicity part plus two simple roots
    roots = sympy.roots(sympy.Poly(to_sympy(q), Z), filter=None)
    expected = sum(1 for r, k in sympy.roots(to_sympy(q), Z).items() if k % 2 and r.is_real and -10 < r < 10)
    if sum(roots.values()) != q.degree:
        return  # sympy could not solve in radicals
    assert sign_changes(q, -10, 10) == expected


@given(int_polys)
def test_isolating_intervals_hold_one_root_each(p):
    assume(p.degree >= 1)
    ivs = isolate_real_roots(p)
    assert len(ivs) == sturm_root_count(p)
    for a, b in ivs:
        assert sturm_root_count(p, a, b, include_lo=False) == 1


# ------------------------------------------------------ root location


def test_locate_real_pair():
    loc = locate_roots(P(-4, 0, 1), Fraction(1, 1000))
    assert loc.converged and len(loc) == 2
    centers = sorted(d.center[0] for d in loc)
    assert all(d.is_real and d.radius <= Fraction(1, 1000) for d in loc)
    assert abs(centers[0] + 2) <= Fraction(1, 1000) and abs(centers[1] - 2) <= Fraction(1, 1000)


def test_locate_double_root_is_one_cluster():
    loc = locate_roots(P(25, -10, 1), Fraction(1, 100))
    assert len(loc) == 1
    (d,) = loc.roots
    assert d.multiplicity == 2 and abs(d.center[0] - 5) <= Fraction(1, 100)


def test_locate_complex_pair():
    loc = locate_roots(P(1, 0, 1), Fraction(1, 1000))
    pts = sorted((d.as_complex() for d in loc), key=lambda z: z.imag)
    assert len(pts) == 2
    assert abs(pts[0] + 1j) < 1e-3 and abs(pts[1] - 1j) < 1e-3
    assert all(not d.is_real and d.radius <= Fraction(1, 1000) for d in loc)


@given(int_polys)
def test_located_roots_account_for_degree(p):
    assume(p.degree >= 1)
    eps = Fraction(1, 10**8)
    loc = locate_roots(p, eps)
    assert loc.converged
    assert loc.total_multiplicity == p.degree
    assert sum(1 for d in loc if d.is_real) == sturm_root_count(p)
    for d in loc:
        assert d.radius <= eps
        if d.is_real and d.multiplicity % 2 and d.radius > 0:
            c, r = d.center[0], d.radius
            assert p(c - r) * p(c + r) <= 0


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=1, max_size=6, unique=True))
def test_located_roots_are_close_to_known_roots(roots):
    p = Polynomial.from_roots(roots)
    eps = Fraction(1, 10**10)
    loc = locate_roots(p, eps)
    got = sorted(d.center[0] for d in loc)
    for g, r in zip(got, sorted(roots)):
        assert abs(g - r) <= eps


def test_refine_root_shrinks_real_and_complex_disks():
    p = P(-2, 0, 1)
    (d,) = [d for d in locate_roots(p, Fraction(1, 10)) if d.center[0] > 0]
    fine = refine_root(p, d, Fraction(1, 10**40))
    assert fine.radius <= Fraction(1, 10**40)
    assert fine.center[0] ** 2 - 2 < Fraction(1, 10**39)
    q = P(2, -2, 1)  # roots 1 +- i
    d = next(iter(locate_roots(q, Fraction(1, 10))))
    fine = refine_root(q, d, Fraction(1, 10**20))
    assert abs(fine.as_complex() - complex(1, d.center[1] > 0 and 1 or -1)) < 1e-15


def test_complex_rational_arithmetic():
    z = ComplexRational(1, 2)
    assert z * z.conjugate() == ComplexRational(5)
    assert (1 / z) * z == ComplexRational(1)
    assert P(1, 0, 1)(ComplexRational(0, 1)) == ComplexRational(0)
