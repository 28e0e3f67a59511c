# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels on GMP integers.

Same interface as ``_kernels_py``. Elimination and pseudo-remainders run
on ``mpz_t`` values, with Python ints crossing the boundary as hexadecimal
strings; the sign kernels are re-exported from the fallback.
"""

from libc.stdlib cimport free, malloc

# Sign evaluation stays on Python ints: converting every chain coefficient
# per evaluation point costs more than the Horner loop itself.
from ._kernels_py import int_sign_at, sign_variations, sign_variations_inf


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef __mpz_struct *mpz_ptr

    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_ui(mpz_ptr, unsigned long)
    int mpz_set_str(mpz_ptr, const char *, int)
    char *mpz_get_str(char *, int, mpz_ptr)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_add(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_abs(mpz_ptr, mpz_ptr)
    int mpz_cmp(mpz_ptr, mpz_ptr)
    int mpz_cmpabs(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)
    void mpz_swap(mpz_ptr, mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)


cdef void _load(mpz_ptr dst, object value):
    cdef bytes s
    if value == 0:
        mpz_set_ui(dst, 0)
        return
    s = format(value, "x").encode("ascii")
    mpz_set_str(dst, s, 16)


cdef object _store(mpz_ptr src):
    # The buffer is ours: other extensions (gmpy2) may replace GMP's
    # allocator, so memory GMP allocates must not be freed with libc free.
    cdef char *buf
    cdef object out
    if mpz_sgn(src) == 0:
        return 0
    buf = <char *> malloc(mpz_sizeinbase(src, 16) + 2)
    if buf == NULL:
        raise MemoryError()
    mpz_get_str(buf, 16, src)
    try:
        out = int(buf.decode("ascii"), 16)
    finally:
        free(buf)
    return out


def int_prem(a, b):
    """Pseudo-remainder of ``a`` by ``b``; returns ``(r, k)`` as the fallback does."""
    cdef Py_ssize_t nb = len(b)
    cdef Py_ssize_t nr = len(a)
    cdef Py_ssize_t i, shift
    cdef int k = 0
    cdef mpz_t *r
    cdef mpz_t *bb
    cdef mpz_t lb, lr
    r = <mpz_t *> malloc(max(nr, 1) * sizeof(mpz_t))
    bb = <mpz_t *> malloc(max(nb, 1) * sizeof(mpz_t))
    mpz_init(lb); mpz_init(lr)
    for i in range(nr):
        mpz_init(r[i]); _load(r[i], a[i])
    for i in range(nb):
        mpz_init(bb[i]); _load(bb[i], b[i])
    mpz_set(lb, bb[nb - 1])
    cdef Py_ssize_t top = nr
    try:
        while top >= nb:
            mpz_set(lr, r[top - 1])
            shift = top - nb
            for i in range(top):
                mpz_mul(r[i], r[i], lb)
            for i in range(nb):
                mpz_submul(r[shift + i], lr, bb[i])
            top -= 1
            while top > 0 and mpz_sgn(r[top - 1]) == 0:
                top -= 1
            k += 1
        out = [_store(r[i]) for i in range(top)]
    finally:
        for i in range(nr):
            mpz_clear(r[i])
        for i in range(nb):
            mpz_clear(bb[i])
        mpz_clear(lb); mpz_clear(lr)
        free(r); free(bb)
    return out, k


def bareiss_echelon(rows, Py_ssize_t ncols):
    """Fraction-free row echelon form, in place.

    Same pivoting rule as the fallback: smallest absolute value in the
    column, ties to the lowest row index. Returns the pivot columns.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t total = nrows * ncols
    cdef Py_ssize_t i, j, c, r = 0, best
    cdef mpz_t *m
    cdef mpz_t prev, piv, a, tmp
    if nrows == 0 or ncols == 0:
        return []
    m = <mpz_t *> malloc(total * sizeof(mpz_t))
    for i in range(nrows):
        row = rows[i]
        for j in range(ncols):
            mpz_init(m[i * ncols + j])
            _load(m[i * ncols + j], row[j])
    mpz_init(prev); mpz_init(piv); mpz_init(a); mpz_init(tmp)
    mpz_set_ui(prev, 1)
    pivots = []
    try:
        for c in range(ncols):
            if r == nrows:
                break
            best = -1
            for i in range(r, nrows):
                if mpz_sgn(m[i * ncols + c]) != 0:
                    if best < 0 or mpz_cmpabs(m[i * ncols + c], m[best * ncols + c]) < 0:
                        best = i
            if best < 0:
                continue
            if best != r:
                for j in range(ncols):
                    mpz_swap(m[r * ncols + j], m[best * ncols + j])
            mpz_set(piv, m[r * ncols + c])
            for i in range(r + 1, nrows):
                mpz_set(a, m[i * ncols + c])
                if mpz_sgn(a) != 0:
                    for j in range(c + 1, ncols):
                        mpz_mul(tmp, piv, m[i * ncols + j])
                        mpz_submul(tmp, a, m[r * ncols + j])
                        mpz_divexact(m[i * ncols + j], tmp, prev)
                elif mpz_cmp(piv, prev) != 0:
                    for j in range(c + 1, ncols):
                        if mpz_sgn(m[i * ncols + j]) != 0:
                            mpz_mul(tmp, piv, m[i * ncols + j])
                            mpz_divexact(m[i * ncols + j], tmp, prev)
                mpz_set_ui(m[i * ncols + c], 0)
            mpz_set(prev, piv)
            pivots.append(c)
            r += 1
        for i in range(nrows):
            rows[i] = [_store(m[i * ncols + j]) for j in range(ncols)]
    finally:
        for i in range(total):
            mpz_clear(m[i])
        mpz_clear(prev); mpz_clear(piv); mpz_clear(a); mpz_clear(tmp)
        free(m)
    return pivots
