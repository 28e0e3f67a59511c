"""Compare the compiled GMP kernels with the pure-Python fallback.

Times three workloads on the canonical instance:

* the exact nullspace of the assembled system (dominated by fraction-free
  elimination on the integerised block),
* the Sturm chain of ``a_{n,m}`` (pseudo-remainders),
* sign-variation counts of that chain at many rational points.

Usage::

    python benchmarks/bench_kernels.py --n 22 --repeat 3
"""

import argparse
import time
from fractions import Fraction

from nikishin_hp import _backend, assemble, available_backends, canonical_instance, solve, use_backend
from nikishin_hp.exact.roots import sturm_chain
from nikishin_hp.hp_system import nullspace


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=22)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--points", type=int, default=200)
    args = ap.parse_args(argv)

    inst = canonical_instance(args.n)
    system = assemble(inst)
    ints = solve(inst).last.integer_form()[1]
    pts = [Fraction(2) + Fraction(k, args.points) for k in range(args.points)]

    workloads = {
        "nullspace (Bareiss)": lambda: nullspace(system),
        "Sturm chain (prem)": lambda: sturm_chain(ints),
    }
    chain = sturm_chain(ints)
    workloads["sign variations"] = lambda: [_backend.kernels.sign_variations(chain, p.numerator, p.denominator) for p in pts]

    start = _backend.BACKEND
    results = {}
    try:
        for name in available_backends():
            use_backend(name)
            results[name] = {w: best_of(fn, args.repeat) for w, fn in workloads.items()}
    finally:
        use_backend(start)

    names = available_backends()
    print(f"canonical instance, n = {args.n}, matrix {system.shape[0]}x{system.shape[1]}, best of {args.repeat}")
    print(f"{'workload':<22}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for w in workloads:
        times = [results[n][w][0] for n in names]
        outs = [results[n][w][1] for n in names]
        assert all(o == outs[0] for o in outs), f"backends disagree on {w}"
        line = f"{w:<22}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(names) == 2:
            line += f"{times[1] / times[0]:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
