"""Command-line driver: validate configurations, solve, sweep ``n`` and report.

Exit codes
----------
0  success
1  malformed input, ``n < 2D``, or missing sweep artifacts
2  a theorem hypothesis fails (``solve`` and ``sweep`` proceed with ``--force``)
3  solver defect: the interpolation conditions are not met exactly
4  a sweep finished but at least one ``n`` failed
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import _backend
from .analysis import (
    default_grid,
    explicit_grid,
    form_orders,
    pole_hypothesis_check,
    run_sweep,
    sweep_rate_report,
    target_f,
    write_csv,
    zero_report,
)
from .analysis.sweep import read_csv
from .hp_system import InstanceError, Perturbation, assemble, build_instance, solve
from .nikishin import MeasureError, NikishinGenerator

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_DEFECT, EXIT_SWEEP = 0, 1, 2, 3, 4
OUT_ENV = "NIKISHIN_HP_OUT"
DEFAULT_PRECISION = Fraction(1, 10**12)


class ConfigError(ValueError):
    """Configuration file that cannot be used as given."""


@dataclass(frozen=True)
class ExperimentConfig:
    gen: NikishinGenerator
    perturbations: tuple
    n_min: int
    n_max: int
    grid: object
    precision: Fraction
    output_dir: str | None
    rho: float | None
    raw: dict

    @property
    def m(self):
        return self.gen.m

    def instance(self, n):
        return build_instance(self.gen, self.perturbations, n)

    def grid_for(self, inst):
        if self.grid == "default":
            return default_grid(self.gen.interval(self.m), inst.t_roots)
        return self.grid


def _field(data, key, kind=None):
    if key not in data:
        raise ConfigError(f"missing field '{key}'")
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise ConfigError(f"field '{key}' must be {kind.__name__}")
    return value


def _parse_rational(text, where):
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{where}: '{text}' is not a rational") from None


def parse_config(data):
    """Validate a decoded configuration and build its objects.

    Raises
    ------
    ConfigError
        With the offending field named.
    """
    if not isinstance(data, dict):
        raise ConfigError("top level must be a JSON object")
    try:
        gen = NikishinGenerator.from_json(_field(data, "generator", list))
    except MeasureError as exc:
        raise ConfigError(f"generator: {exc}") from None
    raw_perts = _field(data, "perturbations", list)
    if len(raw_perts) != gen.m:
        raise ConfigError(f"perturbations: expected {gen.m} entries, got {len(raw_perts)}")
    perts = []
    for k, item in enumerate(raw_perts, start=1):
        try:
            perts.append(Perturbation.from_json(item))
        except (InstanceError, ValueError, TypeError, AttributeError, ZeroDivisionError) as exc:
            raise ConfigError(f"perturbations[{k}]: {exc}") from None
    n_min = _field(data, "n_min", int)
    n_max = _field(data, "n_max", int)
    if n_min < 1 or n_max < n_min:
        raise ConfigError(f"need 1 <= n_min <= n_max, got n_min={n_min}, n_max={n_max}")
    grid_spec = data.get("grid", "default")
    if grid_spec == "default":
        grid = "default"
    elif isinstance(grid_spec, list) and grid_spec:
        try:
            grid = explicit_grid(
                [(_parse_rational(p[0], "grid"), _parse_rational(p[1], "grid")) for p in grid_spec]
            )
        except (TypeError, IndexError):
            raise ConfigError("grid: points must be [re, im] pairs") from None
    else:
        raise ConfigError("grid: expected \"default\" or a nonempty list of [re, im] pairs")
    precision = _parse_rational(data.get("precision", str(DEFAULT_PRECISION)), "precision")
    if precision <= 0:
        raise ConfigError("precision must be positive")
    rho = data.get("rho")
    if rho is not None and not (isinstance(rho, (int, float)) and 0 < rho < 1):
        raise ConfigError("rho must be a number in (0, 1)")
    return ExperimentConfig(gen, tuple(perts), n_min, n_max, grid, precision, data.get("output_dir"), rho, data)


def load_config(path):
    """Read a JSON configuration; ``"canonical"`` names the bundled one."""
    if str(path) == "canonical":
        text = resources.files("nikishin_hp").joinpath("data/canonical.json").read_text()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_config(data)


# ----------------------------------------------------------------- checks


def hypothesis_report(cfg):
    """Soft checks: where the zeros of ``T`` lie and the pole count of ``f``."""
    inst = cfg.instance(max(cfg.n_min, 1))
    f = target_f(cfg.gen, cfg.perturbations)
    poles = pole_hypothesis_check(f, inst.T, cfg.gen.intervals, [p.t for p in cfg.perturbations])
    checks = {
        "T_zeros_outside_first_interval": inst.t_zeros_outside_delta1,
        "T_zeros_outside_last_interval": inst.t_zeros_outside_deltam,
        "f_pole_count_equals_D": poles.poles_off_interval == inst.D,
        "f_full_order_poles_at_T_zeros": poles.limits_nonzero,
    }
    return inst, checks, poles


def _print(msg, stream=None):
    print(msg, file=stream or sys.stdout)


def _out_dir(args, cfg):
    path = args.out or (cfg.output_dir if cfg else None) or os.environ.get(OUT_ENV) or "nikishin_out"
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _dump(path, obj):
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _load_or_fail(args):
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        _print(f"error: {exc}", sys.stderr)
        return None, EXIT_INPUT
    if args.precision is not None:
        try:
            p = Fraction(args.precision)
        except (ValueError, ZeroDivisionError):
            _print(f"error: --precision '{args.precision}' is not a rational", sys.stderr)
            return None, EXIT_INPUT
        cfg = replace(cfg, precision=p)
    return cfg, EXIT_OK


def _gate(cfg, force):
    """Shared precondition check for solve and sweep; returns an exit code or None."""
    try:
        _, checks, _ = hypothesis_report(cfg)
    except InstanceError as exc:
        _print(f"error: {exc}", sys.stderr)
        return EXIT_INPUT
    failed = [k for k, ok in checks.items() if not ok]
    if failed and not force:
        _print(f"hypothesis violated: {', '.join(failed)} (use --force to run anyway)", sys.stderr)
        return EXIT_HYPOTHESIS
    for k in failed:
        _print(f"warning: {k} fails; continuing because of --force", sys.stderr)
    return None


# --------------------------------------------------------------- commands


def cmd_validate(args):
    cfg, code = _load_or_fail(args)
    if cfg is None:
        return code
    try:
        inst, checks, poles = hypothesis_report(cfg)
    except InstanceError as exc:
        _print(f"error: {exc}", sys.stderr)
        return EXIT_INPUT
    _print(f"m = {cfg.m}, T = {inst.T}, D = {inst.D}, n range {cfg.n_min}..{cfg.n_max}")
    _print("consecutive intervals disjoint: ok")
    for key, ok in checks.items():
        _print(f"{key}: {'ok' if ok else 'VIOLATED'}")
    if poles.pairwise_coprime is not None:
        _print(f"denominators pairwise coprime: {poles.pairwise_coprime}")
    if not all(checks.values()):
        _print("warning: a convergence hypothesis is violated; runs need --force", sys.stderr)
        return EXIT_HYPOTHESIS
    return EXIT_OK


def _solve_one(cfg, n, out, emit_matrix):
    inst = cfg.instance(n)
    if emit_matrix:
        _dump(out / f"matrix_n{n}.json", assemble(inst).to_json())
    sol = solve(inst)
    orders = form_orders(sol, inst)
    _dump(out / f"solution_n{n}.json", sol.to_json())
    _dump(out / f"form_orders_n{n}.json", orders.to_json())
    if not orders.ok:
        return sol, orders, None
    zeros = zero_report(sol, inst, cfg.precision)
    _dump(out / f"zeros_n{n}.json", zeros.to_json())
    return sol, orders, zeros


def cmd_solve(args):
    cfg, code = _load_or_fail(args)
    if cfg is None:
        return code
    try:
        cfg.instance(args.n)
    except InstanceError as exc:
        _print(f"error: {exc}", sys.stderr)
        return EXIT_INPUT
    gate = _gate(cfg, args.force)
    if gate is not None:
        return gate
    out = _out_dir(args, cfg)
    sol, orders, zeros = _solve_one(cfg, args.n, out, args.emit_matrix)
    if not orders.ok:
        d = orders.defects[0]
        _print(f"solver defect at level {d['level']}, row {d['row']} (power {d['power']})", sys.stderr)
        return EXIT_DEFECT
    _print(f"n = {args.n}: nullspace dimension {sol.nullspace_dim}, deg a_(n,m) = {zeros.deg_last}")
    _print(f"interior sign changes {zeros.interior_sign_changes}, exterior zeros {zeros.exterior_count}")
    _print(f"artifacts written to {out}")
    return EXIT_OK


def cmd_sweep(args):
    cfg, code = _load_or_fail(args)
    if cfg is None:
        return code
    gate = _gate(cfg, args.force)
    if gate is not None:
        return gate
    out = _out_dir(args, cfg)
    inst = cfg.instance(cfg.n_min)
    grid = cfg.grid_for(inst)
    ns = range(cfg.n_min, cfg.n_max + 1)
    results = run_sweep(cfg.gen, cfg.perturbations, ns, grid, cfg.precision, args.jobs, args.inject_failure or ())
    rate = sweep_rate_report(results, cfg.gen, grid, cfg.rho)
    bound = rate.bound if rate is not None else None
    with open(out / "sweep.csv", "w", newline="") as fh:
        write_csv(results, cfg.m, bound, fh)
    per_n = out / "per_n"
    per_n.mkdir(exist_ok=True)
    for r in results:
        if r.failed:
            continue
        _dump(per_n / f"solution_n{r.n}.json", r.solution.to_json())
        _dump(per_n / f"zeros_n{r.n}.json", r.zeros.to_json())
        _dump(per_n / f"errors_n{r.n}.json", {str(j): e.to_json() for j, e in r.errors.items()})
    _dump(out / "rate_report.json", rate.to_json() if rate is not None else {"available": False, "reason": "needs m >= 2"})
    failed = [r.n for r in results if r.failed]
    _dump(
        out / "sweep_meta.json",
        {
            "m": cfg.m,
            "D": inst.D,
            "n_min": cfg.n_min,
            "n_max": cfg.n_max,
            "failed": failed,
            "grid": grid.to_json(),
            "config": cfg.raw,
        },
    )
    _print(f"{len(results) - len(failed)}/{len(results)} rows ok; artifacts in {out}")
    if failed:
        _print(f"failed n: {failed}", sys.stderr)
        return EXIT_SWEEP
    return EXIT_OK


def _float(text):
    try:
        return float(text)
    except (TypeError, ValueError):
        return None


def cmd_report(args):
    d = Path(args.sweep_dir)
    csv_path, meta_path = d / "sweep.csv", d / "sweep_meta.json"
    if not d.is_dir() or not csv_path.exists() or not meta_path.exists():
        missing = [p.name for p in (csv_path, meta_path) if not p.exists()]
        _print(f"error: missing sweep artifacts in {d}: {', '.join(missing) or 'directory'}", sys.stderr)
        return EXIT_INPUT
    meta = json.loads(meta_path.read_text())
    rows = read_csv(csv_path)
    m, D = meta["m"], meta["D"]
    rate_path = d / "rate_report.json"
    rate = json.loads(rate_path.read_text()) if rate_path.exists() else {}
    bound = rate.get("bound")
    ok_rows = [r for r in rows if r["nullspace_dim"] != "FAILED"]
    expected = set(range(meta["n_min"], meta["n_max"] + 1))
    present = {int(r["n"]) for r in ok_rows}

    _print(f"{'n':>4} {'dim':>4} {'deg':>4} {'interior':>8} {'n-D':>4} {'ext':>4} {'match dist':>12} {'err^(1/n)':>10}  checks")
    for r in ok_rows:
        n = int(r["n"])
        interior = int(r["interior_sign_changes"])
        root = _float(r["err_root_n"])
        flags = ["interior=n-D" if interior == n - D else "interior!=n-D"]
        if bound is not None and root is not None:
            flags.append("rate<=bound" if root <= bound else "rate>bound")
        dist = _float(r["max_match_distance"])
        dist = f"{dist:.3e}" if dist is not None else "-"
        root_s = f"{root:.5f}" if root is not None else "-"
        _print(
            f"{n:>4} {r['nullspace_dim']:>4} {r['deg_last']:>4} {interior:>8} {n - D:>4} "
            f"{r['exterior_count']:>4} {dist:>12} {root_s:>10}  {' '.join(flags)}"
        )
    all_interior = all(int(r["interior_sign_changes"]) == int(r["n"]) - D for r in ok_rows)
    _print(f"interior = n-D for all rows: {all_interior}")
    if bound is not None:
        _print(f"rate bound delta(K)*||phi_inf||_K = {bound:.6g}")
    missing = sorted(expected - present)
    if missing:
        _print(f"note: incomplete sweep, no results for n = {missing}")
    for j in range(m):
        lines = []
        for r in ok_rows:
            e = _float(r.get(f"err_j{j}"))
            if e is not None and e > 0:
                lines.append(f"{r['n']} {math.log10(e):.12g}")
        (d / f"plot_err_j{j}.dat").write_text("# n log10(error)\n" + "\n".join(lines) + "\n")
    return EXIT_OK


# ------------------------------------------------------------------- main


def build_parser():
    p = argparse.ArgumentParser(prog="nikishin-hp", description=__doc__.splitlines()[0])
    p.add_argument("--backend", choices=["compiled", "python"], help="integer kernel implementation")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("config", help="experiment JSON, or 'canonical' for the bundled one")
        sp.add_argument("--precision", help="root-location precision as a rational, e.g. 1/10000")
        sp.add_argument("--out", help=f"output directory (default: ${OUT_ENV} or ./nikishin_out)")
        sp.add_argument("--force", action="store_true", help="run even when a hypothesis fails")

    sp = sub.add_parser("validate", help="check a configuration and the theorem hypotheses")
    sp.add_argument("config")
    sp.add_argument("--precision")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("solve", help="solve one instance")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--emit-matrix", action="store_true", help="also write the assembled system")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("sweep", help="solve n_min..n_max and summarise")
    common(sp)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--inject-failure", type=int, action="append", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("report", help="summarise a sweep directory")
    sp.add_argument("sweep_dir")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.backend:
        try:
            _backend.use_backend(args.backend)
        except ValueError as exc:
            _print(f"error: {exc}", sys.stderr)
            return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())


__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "build_parser",
    "cmd_report",
    "cmd_solve",
    "cmd_sweep",
    "cmd_validate",
    "load_config",
    "main",
    "parse_config",
]
