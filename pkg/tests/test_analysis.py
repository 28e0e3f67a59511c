import cmath
import itertools
import math
from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import pole_perturbation, random_generator, seeded, zero_perturbations
from nikishin_hp import (
    DiscreteMeasure,
    HPSolution,
    NikishinGenerator,
    Perturbation,
    assemble,
    build_instance,
    canonical_generator,
    canonical_instance,
    canonical_perturbations,
    solve,
)
from nikishin_hp.analysis import (
    csv_columns,
    default_grid,
    delta_K,
    evaluate_f,
    explicit_grid,
    form_orders,
    level_curve,
    level_forms,
    match_points,
    orthogonality_check,
    phi,
    phi_inf,
    pole_hypothesis_check,
    rate_report,
    ratio_error,
    target_f,
    telescoping_residual,
    write_csv,
    zero_report,
)
from nikishin_hp.analysis.sweep import NResult
from nikishin_hp.exact import INF_ORDER, ComplexRational, Polynomial, RationalFunction
from nikishin_hp.hp_system import column_layout
from nikishin_hp.instances import recovery_generator
from nikishin_hp.linalg import matvec
from nikishin_hp.nikishin import cauchy_as_rational, cauchy_eval, chain

F = Fraction


def P(*c):
    return Polynomial(c)


one_atom = NikishinGenerator([DiscreteMeasure([(0, 1)])], [(0, 0)])


def direct_s21(gen, z):
    """ŝ_{2,1}(z) by explicit double summation over the atoms."""
    total = F(0)
    for x, w in gen.sigma(2).atoms:
        inner = sum(v / (x - y) for y, v in gen.sigma(1).atoms)
        total += w * inner / (z - x)
    return total


def direct_s22(gen, z):
    return sum(w / (z - x) for x, w in gen.sigma(2).atoms)


# --------------------------------------------------------------- target f


def test_target_f_unperturbed_is_the_reversed_chain_transform():
    gen = canonical_generator()
    assert target_f(gen, zero_perturbations(2)) == cauchy_as_rational(chain(gen, 2, 1))


def test_target_f_single_level():
    gen = recovery_generator(4)
    r = Perturbation(P(3), P(2, 0, 1))
    assert target_f(gen, [r]) == cauchy_as_rational(gen.sigma(1)) + r.as_rational()


def test_target_f_canonical_value_at_ten():
    gen = canonical_generator()
    f = target_f(gen, canonical_perturbations())
    expected = direct_s21(gen, F(10)) + direct_s22(gen, F(10)) / 5
    assert f(F(10)) == expected
    assert evaluate_f(gen, canonical_perturbations(), F(10)) == expected


@given(st.integers(0, 10**6))
def test_pointwise_and_assembled_f_agree(seed):
    rng = seeded(seed)
    m = rng.randint(1, 3)
    gen = random_generator(rng, m, max_atoms=4)
    perts = [pole_perturbation(F(rng.randint(30, 60), 7)) if rng.random() < 0.5 else Perturbation.zero() for _ in range(m)]
    f = target_f(gen, perts)
    z = ComplexRational(F(rng.randint(-30, 30), 11), F(rng.randint(1, 9), 5))
    assert f(z) == evaluate_f(gen, perts, z)


# ------------------------------------------------------------ pole check


def test_pole_check_canonical():
    gen = canonical_generator()
    inst = canonical_instance(2)
    chk = pole_hypothesis_check(target_f(gen, inst.perturbations), inst.T, gen.intervals, [p.t for p in inst.perturbations])
    assert chk.satisfied and chk.poles_off_interval == 1 == chk.D
    assert chk.pairwise_coprime


def test_pole_check_detects_a_cancelled_pole():
    gen = canonical_generator()
    c = cauchy_eval(gen.sigma(2), F(5))  # residue of ŝ_{2,2}/(z-5) at 5
    perts = [pole_perturbation(5), Perturbation(P(c), P(-5, 1))]
    f = target_f(gen, perts)
    chk = pole_hypothesis_check(f, P(-5, 1), gen.intervals, [p.t for p in perts])
    assert not chk.limits_nonzero and not chk.satisfied
    assert chk.poles_off_interval == 0 != chk.D
    assert chk.pairwise_coprime is False


def test_pole_check_unperturbed_is_trivial():
    gen = canonical_generator()
    chk = pole_hypothesis_check(target_f(gen, zero_perturbations(2)), P(1), gen.intervals)
    assert chk.satisfied and chk.D == 0 and chk.roots == ()


def test_pole_check_double_zero():
    gen = canonical_generator()
    perts = [Perturbation(P(1), P(-5, 1) ** 2), Perturbation.zero()]
    inst = build_instance(gen, perts, 4)
    chk = pole_hypothesis_check(target_f(gen, perts), inst.T, gen.intervals)
    assert chk.satisfied and chk.D == 2 and chk.roots[0]["multiplicity"] == 2


# ------------------------------------------------------------ form orders


def test_form_orders_hand_case_vanishes_identically():
    inst = build_instance(one_atom, zero_perturbations(1), 1)
    res = form_orders(solve(inst), inst)
    assert res.orders == (INF_ORDER,) and res.ok
    assert res.to_json()["orders"] == ["inf"]


def test_form_orders_canonical():
    inst = canonical_instance(4)
    res = form_orders(solve(inst), inst)
    assert res.ok and res.orders[0] >= 5 and res.orders[1] >= 1


def _vector(sol, n, m):
    return [sol.a[j][i] for j, i in column_layout(n, m)]


@pytest.mark.parametrize("level, i", [(0, 0), (1, 2), (2, 4), (0, 3)])
def test_form_orders_mutation_names_the_first_failing_row(level, i):
    n = 4
    inst = canonical_instance(n)
    sol = solve(inst)
    a = list(sol.a)
    a[level] = a[level] + Polynomial.constant(1).shift_degree(i)
    bad = HPSolution(tuple(a), 1, sol.normalization, n)
    res = form_orders(bad, inst)
    assert not res.ok
    resid = matvec(assemble(inst).matrix, _vector(bad, n, inst.m))
    first = next(k for k, v in enumerate(resid) if v)
    assert res.defects[0]["row"] == first


def test_level_forms_polynomials():
    inst = canonical_instance(6)
    sol = solve(inst)
    lf = level_forms(sol, inst)
    T, r1 = inst.T, inst.perturbations[0].as_rational()
    assert lf.p[1] == sol.a[1] * T and lf.p[2] == sol.a[2] * T
    assert RationalFunction(lf.p[0]) == RationalFunction(sol.a[0] * T) - RationalFunction(sol.a[1] * T) * r1
    assert lf.A[2].as_rational() == RationalFunction(sol.a[2])


# ----------------------------------------------------------- orthogonality


def test_orthogonality_recovery_case_all_zero():
    gen = recovery_generator(6)
    inst = build_instance(gen, zero_perturbations(1), 6)
    res = orthogonality_check(solve(inst), inst, 0)
    assert [nu for nu, _ in res] == list(range(6))
    assert all(v == 0 for _, v in res)


def test_orthogonality_fails_beyond_the_guaranteed_range():
    gen = recovery_generator(6)
    inst = build_instance(gen, zero_perturbations(1), 3)
    sol = solve(inst)
    res = orthogonality_check(sol, inst, 0, nu_max=4)
    assert all(v == 0 for nu, v in res if nu <= 2)
    assert res[3][1] != 0


def test_orthogonality_canonical_level_zero():
    inst = canonical_instance(8)
    sol = solve(inst)
    res = orthogonality_check(sol, inst, 0)
    # order n + 1 - D of the T-scaled outer form gives nu = 0..n - 2
    assert [nu for nu, _ in res] == list(range(inst.n - 1))
    assert all(v == 0 for _, v in res)
    beyond = orthogonality_check(sol, inst, 0, nu_max=inst.n + 1)
    assert any(v != 0 for _, v in beyond)


def test_orthogonality_upper_level_range_is_empty_without_weight():
    inst = canonical_instance(8)
    sol = solve(inst)
    assert orthogonality_check(sol, inst, 1) == []
    # the first moment is the 1/z coefficient of the outer form: nonzero
    assert orthogonality_check(sol, inst, 1, nu_max=0)[0][1] != 0


def test_orthogonality_weight_must_not_vanish_at_atoms():
    gen = recovery_generator(6)
    inst = build_instance(gen, zero_perturbations(1), 3)
    with pytest.raises(ZeroDivisionError):
        orthogonality_check(solve(inst), inst, 0, w=P(-F(1, 7), 1))


def test_orthogonality_single_atom_boundary():
    inst = build_instance(one_atom, zero_perturbations(1), 1)
    sol = solve(inst)
    assert orthogonality_check(sol, inst, 0, nu_max=inst.n - 2) == []
    assert orthogonality_check(sol, inst, 0) == [(0, 0)]


# ------------------------------------------------------------- zero report


def test_zero_report_canonical():
    inst = canonical_instance(12)
    rep = zero_report(solve(inst), inst)
    assert rep.deg_last == 12 and rep.interior_sign_changes == 11
    assert rep.exterior_count == 1 and not rep.unmatched_exterior
    (z, t, d) = rep.matched[0]
    assert t == 5 and abs(z - 5) < 1e-3 and d < 1e-3
    assert rep.level_sign_changes[1] >= 12 - 1 - 2 + 1


def test_zero_report_unperturbed_has_no_exterior_zeros():
    inst = build_instance(canonical_generator(), zero_perturbations(2), 10)
    rep = zero_report(solve(inst), inst)
    assert rep.exterior_count == 0 and rep.interior_sign_changes == 10


def test_zero_report_minimal_order():
    inst = canonical_instance(2)
    rep = zero_report(solve(inst), inst)
    assert rep.interior_sign_changes >= inst.n - 2 * inst.D
    assert rep.interior_sign_changes + rep.exterior_count <= rep.deg_last
    assert rep.to_json()["n"] == 2


@given(st.integers(0, 10**6), st.integers(2, 6))
def test_zero_report_counts_never_exceed_degree(seed, n):
    rng = seeded(seed)
    gen = random_generator(rng, 2, max_atoms=6)
    inst = build_instance(gen, [pole_perturbation(F(rng.randint(40, 70), 9)), Perturbation.zero()], n)
    rep = zero_report(solve(inst), inst)
    assert rep.interior_sign_changes + rep.exterior_count <= rep.deg_last


@given(
    st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=1, max_size=5),
    st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=1, max_size=4),
)
def test_matching_is_distance_minimising(zeros, targets):
    pairs, unmatched = match_points(zeros, targets)
    k = min(len(zeros), len(targets))
    assert len(pairs) == k and len(unmatched) == len(zeros) - k
    best = min(
        sum(abs(zeros[i] - targets[j]) for i, j in zip(perm, cols))
        for cols in itertools.permutations(range(len(targets)), k)
        for perm in itertools.permutations(range(len(zeros)), k)
    )
    assert sum(d for _, _, d in pairs) <= best + 1e-9


# ------------------------------------------------------------ ratio errors


def test_ratio_error_vanishes_on_exact_recovery():
    gen = recovery_generator(6)
    inst = build_instance(gen, zero_perturbations(1), 6)
    err = ratio_error(solve(inst), gen, 0, default_grid(gen.interval(1)))
    assert err.sup == 0 and len(err.values) == 16


def test_ratio_error_decreases_at_ten():
    gen = canonical_generator()
    grid = explicit_grid([10])
    for j in (0, 1):
        e6 = ratio_error(solve(canonical_instance(6)), gen, j, grid, canonical_perturbations()).sup
        e10 = ratio_error(solve(canonical_instance(10)), gen, j, grid, canonical_perturbations()).sup
        assert e6 > e10 > 0


def test_ratio_error_unperturbed_decreases_on_the_grid():
    gen = canonical_generator()
    grid = default_grid(gen.interval(2))
    errs = [
        ratio_error(solve(build_instance(gen, zero_perturbations(2), n)), gen, 0, grid).sup for n in (4, 6, 8, 10)
    ]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_ratio_error_excludes_poles_and_reports_decimals():
    gen = canonical_generator()
    sol = solve(canonical_instance(6))
    err = ratio_error(sol, gen, 0, explicit_grid([5, 10]), canonical_perturbations())
    assert len(err.excluded) == 1 and err.excluded[0][1] == "pole of the limit function"
    assert isinstance(err.sup, Decimal) and len(err.sup.as_tuple().digits) == 40
    assert set(err.to_json()) == {"j", "n", "sup", "values", "excluded"}


# ------------------------------------------------------------ telescoping


@pytest.mark.parametrize("m, j", [(2, 1), (3, 1), (3, 2)])
def test_telescoping_examples(m, j):
    gen = random_generator(seeded(m * 10 + j), m, max_atoms=4)
    assert telescoping_residual(gen, j).is_zero()


def test_telescoping_m3_j1_by_hand():
    gen = random_generator(seeded(5), 3, max_atoms=3)
    s = lambda a, b: cauchy_as_rational(chain(gen, a, b))  # noqa: E731
    assert -s(3, 2) + s(3, 3) * s(2, 2) - s(2, 3) == telescoping_residual(gen, 1)
    with pytest.raises(IndexError):
        telescoping_residual(gen, 3)


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_telescoping_random(seed, m):
    gen = random_generator(seeded(seed), m, max_atoms=3)
    assert all(telescoping_residual(gen, j).is_zero() for j in range(1, m))


# -------------------------------------------------------- conformal maps


def test_phi_examples():
    assert phi_inf((-1, 1), 1.25) == pytest.approx(0.5)
    assert phi((-1, 1), None, 1.25) == phi_inf((-1, 1), 1.25)
    assert phi((-1, 1), float("inf"), 3) == phi_inf((-1, 1), 3)
    assert abs(phi((2, 3), 0.5 + 1j, 0.5 + 1j)) == 0
    assert phi_inf((-1, 1), complex("inf")) == 0
    # |φ_∞| tends to 1 at the interval
    assert abs(phi_inf((-1, 1), 1 + 1e-10)) > 0.9999


def test_phi_rejects_points_on_the_interval():
    with pytest.raises(ValueError):
        phi_inf((2, 3), 2.5)
    with pytest.raises(ValueError):
        phi((2, 3), 2, 10)


off = st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False).filter(
    lambda z: abs(z.imag) > 1e-3 or not (1.99 <= z.real <= 3.01)
)


@given(off, off)
def test_phi_maps_into_the_disk(z, t):
    if abs(z - t) < 1e-3:
        return
    v = abs(phi((2, 3), t, z))
    assert 0 < v < 1
    assert abs(phi_inf((2, 3), z)) < 1


@given(st.floats(min_value=3.001, max_value=1e3))
def test_phi_inf_real_outside_the_interval(x):
    assert phi_inf((2, 3), x).imag == 0
    assert phi_inf((2, 3), 5 - x).imag == 0


def test_level_curve_lies_on_the_level_set():
    for z in level_curve((2, 3), 0.6, 64):
        assert abs(phi_inf((2, 3), z)) == pytest.approx(0.6, rel=1e-12)
    with pytest.raises(ValueError):
        level_curve((2, 3), 1.5)


# ------------------------------------------------------------ rate bound


def test_default_grid_geometry():
    grid = default_grid((2, 3))
    assert len(grid) == 16
    for p in grid:
        assert (p.re - F(5, 2)) ** 2 + p.im**2 == F(9, 4)
    from nikishin_hp.exact import locate_roots

    roots = locate_roots(P(-4, 1), F(1, 100)).roots
    assert len(default_grid((2, 3), roots)) == 15


def test_rate_bound_far_point():
    rep = rate_report({}, (2, 3), (-1, 1), [100])
    assert rep.bound < 1 and rep.phi_inf_norm_K < 0.01


def test_rate_bound_near_the_interval():
    rep = rate_report({}, (2, 3), (-1, 1), [3 + F(1, 10**9)])
    assert rep.phi_inf_norm_K > 0.999
    assert rep.bound == pytest.approx(rep.delta_K, rel=1e-3)


def test_rate_bound_canonical_closed_form():
    gen = canonical_generator()
    grid = default_grid(gen.interval(2))
    rep = rate_report({}, gen.interval(2), gen.interval(1), grid, t_samples=gen.sigma(1).points, rho=0.95)
    # the nearest grid point is z = 4, where u = 3 and φ_∞ = 1/(3 + 2√2)
    assert rep.phi_inf_norm_K == pytest.approx(1 / (3 + 2 * math.sqrt(2)), rel=1e-12)
    brute = max(abs(phi((2, 3), t, complex(z))) for z in grid for t in np.linspace(-1, 1, 20001))
    assert rep.delta_K == pytest.approx(brute, rel=1e-6)
    assert rep.delta_K >= brute - 1e-12
    assert rep.bound < 1 and 0 < rep.kappa_rho < 1 and rep.K_outside_level_curve


def test_rate_report_rejects_bad_input():
    with pytest.raises(ValueError):
        rate_report({}, (2, 3), (-1, 1), [])
    with pytest.raises(ValueError):
        rate_report({}, (2, float("inf")), (-1, 1), [10])


def test_rate_report_root_n():
    rep = rate_report({0: [(2, Decimal("1e-4")), (4, Decimal("1e-8"))]}, (2, 3), (-1, 1), [10])
    assert rep.root_n[0][-1][1] == pytest.approx(0.01)
    assert rep.latest_root_n() == (4, pytest.approx(0.01))


def test_delta_k_is_a_maximum_over_the_previous_interval():
    val = delta_K([complex(4, 1)], (2, 3), (-1, 1))
    for t in np.linspace(-1, 1, 101):
        assert abs(phi((2, 3), t, complex(4, 1))) <= val + 1e-12


# --------------------------------------------------------------------- CSV


def test_csv_header_and_failed_rows():
    assert csv_columns(2) == [
        "n",
        "nullspace_dim",
        "deg_last",
        "interior_sign_changes",
        "exterior_count",
        "max_match_distance",
        "err_j0",
        "err_j1",
        "err_root_n",
        "bound",
    ]
    text = write_csv([NResult(3, error="boom")], 2, 0.5)
    lines = text.splitlines()
    assert lines[0] == ",".join(csv_columns(2))
    assert lines[1].startswith("3,FAILED,boom") and lines[1].count(",") == 9
