"""Pure-Python integer kernels.

Reference implementation of the hot loops; ``_kernels.pyx`` mirrors this
module function for function. Polynomials are ascending lists of ints with no
trailing zeros; matrices are lists of rows of ints.
"""


def int_sign_at(coeffs, num, den):
    """Sign of the integer polynomial at the rational ``num/den`` (``den > 0``)."""
    d = len(coeffs) - 1
    if d < 0:
        return 0
    acc = coeffs[d]
    bp = 1
    for i in range(d - 1, -1, -1):
        bp *= den
        acc = acc * num + coeffs[i] * bp
    return (acc > 0) - (acc < 0)


def sign_variations(chain, num, den):
    """Sign variations of a polynomial sequence at ``num/den``; zeros skipped."""
    count = 0
    last = 0
    for coeffs in chain:
        s = int_sign_at(coeffs, num, den)
        if s == 0:
            continue
        if last != 0 and s != last:
            count += 1
        last = s
    return count


def sign_variations_inf(chain, direction):
    """Sign variations at ``+inf`` (direction 1) or ``-inf`` (direction -1)."""
    count = 0
    last = 0
    for coeffs in chain:
        if not coeffs:
            continue
        s = 1 if coeffs[-1] > 0 else -1
        if direction < 0 and (len(coeffs) - 1) % 2 == 1:
            s = -s
        if last != 0 and s != last:
            count += 1
        last = s
    return count


def int_prem(a, b):
    """Pseudo-remainder of ``a`` by ``b``.

    Returns ``(r, k)`` with ``lc(b)**k * a = q*b + r`` and ``deg r < deg b``;
    ``k`` is the number of reduction steps actually performed.
    """
    r = list(a)
    nb = len(b)
    lb = b[-1]
    k = 0
    while len(r) >= nb:
        lr = r[-1]
        shift = len(r) - nb
        r = [lb * x for x in r]
        for i in range(nb):
            r[shift + i] -= lr * b[i]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        k += 1
    return r, k


def bareiss_echelon(rows, ncols):
    """Fraction-free row echelon form, in place.

    The pivot in each column is the nonzero entry of smallest absolute value
    among the remaining rows (ties: lowest row index). Returns the list of
    pivot columns; rows past ``len(pivots)`` are zero on exit.
    """
    nrows = len(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_abs = 0
        for i in range(r, nrows):
            v = rows[i][c]
            if v:
                av = v if v > 0 else -v
                if best < 0 or av < best_abs:
                    best = i
                    best_abs = av
        if best < 0:
            continue
        if best != r:
            rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j] - a * prow[j]) // prev
            elif piv != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (piv * row[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots
