"""Exact kernels of rational matrices.

Elimination runs in two phases, both division-free:

1. columns owning a ``±1`` entry are pivoted on that entry directly
   (Gauss-Jordan, so no fractions are introduced);
2. the remaining block is cleared of denominators row by row and reduced by
   fraction-free Bareiss elimination.

Interpolation systems consist mostly of identity blocks plus a small dense
block of large rationals, so phase 1 keeps the big numbers confined to the
Bareiss block.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from . import _backend


def _weight(row):
    return sum(v.numerator.bit_length() + v.denominator.bit_length() for v in row if v)


def _integer_row(row):
    den = reduce(lcm, (v.denominator for v in row if v), 1)
    ints = [v.numerator * (den // v.denominator) if v else 0 for v in row]
    g = reduce(gcd, ints, 0)
    return [v // g for v in ints] if g > 1 else ints


def row_echelon(matrix, ncols=None):
    """Eliminate ``matrix`` and return the data needed for back-substitution.

    Returns
    -------
    dict
        ``unit_pivots`` (list of ``(col, row)`` in the reduced row list),
        ``rows`` (phase-1 rows), ``block_cols`` (columns left for Bareiss),
        ``block`` (integer echelon rows), ``block_pivots`` (positions into
        ``block_cols``) and ``ncols``.
    """
    rows = [[v if isinstance(v, Fraction) else Fraction(v) for v in r] for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    unused = set(range(len(rows)))
    unit_pivots = []
    for c in range(ncols):
        cands = [i for i in unused if rows[i][c] == 1 or rows[i][c] == -1]
        if not cands:
            continue
        i = min(cands, key=lambda k: (_weight(rows[k]), k))
        prow = rows[i]
        if prow[c] == -1:
            prow = rows[i] = [-v for v in prow]
        nz = [(j, v) for j, v in enumerate(prow) if v]
        for k in range(len(rows)):
            if k == i:
                continue
            e = rows[k][c]
            if e:
                row = rows[k]
                for j, v in nz:
                    row[j] -= e * v
        unused.discard(i)
        unit_pivots.append((c, i))

    pivot_cols = {c for c, _ in unit_pivots}
    block_cols = [c for c in range(ncols) if c not in pivot_cols]
    block = []
    for i in sorted(unused):
        sub = [rows[i][c] for c in block_cols]
        if any(sub):
            block.append(_integer_row(sub))
    block_pivots = _backend.kernels.bareiss_echelon(block, len(block_cols)) if block else []
    return {
        "unit_pivots": unit_pivots,
        "rows": rows,
        "block_cols": block_cols,
        "block": block[: len(block_pivots)],
        "block_pivots": block_pivots,
        "ncols": ncols,
    }


def rank(matrix, ncols=None):
    ech = row_echelon(matrix, ncols)
    return len(ech["unit_pivots"]) + len(ech["block_pivots"])


def nullspace(matrix, ncols=None):
    """Exact basis of ``{x : matrix @ x = 0}``.

    Basis vectors are indexed by the free columns in ascending order; vector
    ``k`` has a 1 in the ``k``-th free column and 0 in the others, so the
    basis is reduced in the free coordinates.
    """
    ech = row_echelon(matrix, ncols)
    ncols = ech["ncols"]
    rows = ech["rows"]
    block_cols = ech["block_cols"]
    block = ech["block"]
    bpiv = ech["block_pivots"]
    unit = ech["unit_pivots"]
    pivot_set = {c for c, _ in unit} | {block_cols[p] for p in bpiv}
    free = [c for c in range(ncols) if c not in pivot_set]
    non_unit = [c for c in range(ncols) if c not in {u for u, _ in unit}]

    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(bpiv) - 1, -1, -1):
            pc = bpiv[r]
            row = block[r]
            s = 0
            for j in range(pc + 1, len(block_cols)):
                if row[j]:
                    s += row[j] * x[block_cols[j]]
            x[block_cols[pc]] = Fraction(-s) / row[pc]
        for c, i in unit:
            row = rows[i]
            x[c] = -sum((row[j] * x[j] for j in non_unit if row[j] and x[j]), Fraction(0))
        basis.append(tuple(x))
    return basis


def matvec(matrix, x):
    return [sum((a * b for a, b in zip(row, x) if a and b), Fraction(0)) for row in matrix]
