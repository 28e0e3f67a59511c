"""Per-``n`` diagnostics and sweeps over ``n`` with CSV summaries."""

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from ..hp_system import build_instance, solve
from .forms import form_orders
from .rates import ratio_error, rate_report
from .zeros import zero_report


def csv_columns(m):
    return (
        ["n", "nullspace_dim", "deg_last", "interior_sign_changes", "exterior_count", "max_match_distance"]
        + [f"err_j{j}" for j in range(m)]
        + ["err_root_n", "bound"]
    )


@dataclass
class NResult:
    """Everything computed for one ``n``; ``error`` is set when the pipeline failed."""

    n: int
    solution: object = None
    orders: object = None
    zeros: object = None
    errors: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def failed(self):
        return self.error is not None


def diagnose(inst, grid, precision=Fraction(1, 10**12)):
    """Solve one instance and run every check on it.

    Solver defects (interpolation conditions not met) are recorded as an
    error rather than raised.
    """
    sol = solve(inst)
    orders = form_orders(sol, inst)
    res = NResult(inst.n, sol, orders)
    if not orders.ok:
        res.error = f"defect: {orders.defects[0]}"
        return res
    res.zeros = zero_report(sol, inst, precision)
    for j in range(inst.m):
        res.errors[j] = ratio_error(sol, inst.gen, j, grid, inst.perturbations)
    return res


def _diagnose_task(args):
    gen, perts, n, grid, precision, fail_ns = args
    if n in fail_ns:
        return NResult(n, error="injected failure")
    try:
        return diagnose(build_instance(gen, perts, n), grid, precision)
    except Exception as exc:  # recorded in-row, the sweep continues
        return NResult(n, error=f"{type(exc).__name__}: {exc}")


def run_sweep(gen, perturbations, ns, grid, precision=Fraction(1, 10**12), jobs=1, fail_ns=()):
    """Diagnose every ``n`` in ``ns``; results come back in ascending ``n``.

    ``jobs > 1`` spreads the work over processes; the output does not depend
    on it. ``fail_ns`` injects failures for testing the row isolation.
    """
    tasks = [(gen, tuple(perturbations), n, grid, precision, frozenset(fail_ns)) for n in sorted(ns)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_diagnose_task, tasks))
    else:
        results = [_diagnose_task(t) for t in tasks]
    return sorted(results, key=lambda r: r.n)


def measured_errors(results, m):
    return {j: [(r.n, r.errors[j].sup) for r in results if not r.failed and j in r.errors] for j in range(m)}


def sweep_rate_report(results, gen, grid, rho=None):
    """Rate bound for a sweep; needs ``m >= 2`` for the previous interval."""
    if gen.m < 2:
        return None
    return rate_report(
        measured_errors(results, gen.m),
        gen.interval(gen.m),
        gen.interval(gen.m - 1),
        grid,
        t_samples=gen.sigma(gen.m - 1).points,
        rho=rho,
    )


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, Decimal):
        return f"{value:.16e}"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _root_n(err, n):
    if err == 0:
        return 0.0
    return float((err.ln() / n).exp())


def csv_rows(results, m, bound):
    """Rows for the CSV summary. Failed rows keep ``n`` and carry the reason."""
    rows = []
    for r in results:
        if r.failed:
            rows.append([str(r.n), "FAILED", r.error.replace("\n", " ")] + [""] * (len(csv_columns(m)) - 3))
            continue
        z = r.zeros
        errs = [r.errors[j].sup for j in range(m)]
        root = max(_root_n(e, r.n) for e in errs)
        rows.append(
            [
                str(r.n),
                str(r.solution.nullspace_dim),
                str(z.deg_last),
                str(z.interior_sign_changes),
                str(z.exterior_count),
                _fmt(z.max_match_distance),
            ]
            + [_fmt(e) for e in errs]
            + [_fmt(root), _fmt(bound)]
        )
    return rows


def write_csv(results, m, bound, fh=None):
    """Write the summary CSV to ``fh`` (or return it as a string)."""
    own = fh is None
    fh = io.StringIO() if own else fh
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(csv_columns(m))
    w.writerows(csv_rows(results, m, bound))
    return fh.getvalue() if own else None


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
