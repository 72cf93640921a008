# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pure.py``.

Arithmetic is done in 64-bit integers with explicit overflow detection; on
overflow an ``OverflowError`` is raised and the dispatcher in
``fansig._kernels`` reruns the pure-Python kernel on unbounded integers.
Results are identical to the pure kernels whenever no overflow occurs.
"""

from libc.stdlib cimport malloc, free
from libc.limits cimport LLONG_MIN

cdef extern from *:
    """
    static inline int fs_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int fs_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int fs_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int fs_mul_ovf(long long a, long long b, long long *r) nogil
    int fs_sub_ovf(long long a, long long b, long long *r) nogil
    int fs_add_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _abs(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    a = _abs(a)
    b = _abs(b)
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef int _normalize(long long *row, Py_ssize_t ncols, Py_ssize_t sign_col) nogil:
    """Divide by the content; make row[sign_col] positive. Returns 0 if the row is zero."""
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                break
    if g == 0:
        return 0
    if sign_col >= 0 and row[sign_col] < 0:
        g = -g
    if g != 1:
        for j in range(ncols):
            row[j] = row[j] // g
    return 1


cdef int _combine(long long *r, long long *prow, long long p, long long a,
                  Py_ssize_t ncols) nogil:
    """r <- p*r - a*prow. Returns -1 on overflow, else 1 if nonzero, 0 if zero."""
    cdef Py_ssize_t j
    cdef long long x, y
    cdef int nonzero = 0
    for j in range(ncols):
        if fs_mul_ovf(p, r[j], &x) or fs_mul_ovf(a, prow[j], &y) or fs_sub_ovf(x, y, &r[j]):
            return -1
        if r[j] == LLONG_MIN:
            return -1
        if r[j]:
            nonzero = 1
    return nonzero


def echelon(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef long long *data = NULL
    cdef char *state = NULL        # 0 = active, 1 = dropped, 2 = reduced
    cdef Py_ssize_t *pivot_of = NULL
    cdef Py_ssize_t i, j, c, best, k, nactive
    cdef long long a, p, best_abs, v
    cdef int rc
    reduced_order = []
    pivots = []
    if nrows == 0:
        return [], []
    data = <long long *> malloc(nrows * ncols * sizeof(long long) + 1)
    state = <char *> malloc(nrows + 1)
    pivot_of = <Py_ssize_t *> malloc((nrows + 1) * sizeof(Py_ssize_t))
    if data == NULL or state == NULL or pivot_of == NULL:
        free(data); free(state); free(pivot_of)
        raise MemoryError()
    try:
        nactive = 0
        for i in range(nrows):
            row = rows[i]
            if len(row) != ncols:
                raise ValueError("row length does not match ncols")
            rc = 0
            for j in range(ncols):
                v = row[j]          # raises OverflowError beyond int64
                if v == LLONG_MIN:
                    raise OverflowError("entry out of range")
                data[i * ncols + j] = v
                if v:
                    rc = 1
            state[i] = 0 if rc else 1
            if rc:
                nactive += 1
        for c in range(ncols):
            if nactive == 0:
                break
            best = -1
            best_abs = 0
            for i in range(nrows):
                if state[i] != 0:
                    continue
                a = data[i * ncols + c]
                if a and (best < 0 or _abs(a) < best_abs):
                    best = i
                    best_abs = _abs(a)
                    if best_abs == 1:
                        break
            if best < 0:
                continue
            _normalize(&data[best * ncols], ncols, c)
            state[best] = 2
            nactive -= 1
            pivot_of[best] = c
            p = data[best * ncols + c]
            for i in range(nrows):
                if i == best or state[i] == 1:
                    continue
                a = data[i * ncols + c]
                if not a:
                    continue
                rc = _combine(&data[i * ncols], &data[best * ncols], p, a, ncols)
                if rc < 0:
                    raise OverflowError("int64 overflow in echelon")
                if state[i] == 0:
                    if rc == 0:
                        state[i] = 1
                        nactive -= 1
                    else:
                        _normalize(&data[i * ncols], ncols, -1)
                else:
                    _normalize(&data[i * ncols], ncols, pivot_of[i])
            reduced_order.append(best)
            pivots.append(c)
        out = []
        for k in range(len(reduced_order)):
            i = reduced_order[k]
            out.append([data[i * ncols + j] for j in range(ncols)])
        return out, pivots
    finally:
        free(data)
        free(state)
        free(pivot_of)


def zeta_sum(coords, exps):
    cdef long long num = 0, den = 1, tn, td, c, x, y, g
    cdef long e, q
    for cs, es in zip(coords, exps):
        tn = 1
        td = 1
        for cc, ee in zip(cs, es):
            c = cc
            e = ee
            if c == 0:
                raise ZeroDivisionError("degenerate coordinate")
            if e == 0:
                if fs_mul_ovf(td, c, &td):
                    raise OverflowError("int64 overflow in zeta_sum")
            else:
                for q in range(e - 1):
                    if fs_mul_ovf(tn, c, &tn):
                        raise OverflowError("int64 overflow in zeta_sum")
        if td < 0:
            tn = -tn
            td = -td
        if fs_mul_ovf(num, td, &x) or fs_mul_ovf(tn, den, &y) or fs_add_ovf(x, y, &num):
            raise OverflowError("int64 overflow in zeta_sum")
        if fs_mul_ovf(den, td, &den):
            raise OverflowError("int64 overflow in zeta_sum")
        g = _gcd(num, den)
        if g > 1:
            num = num // g
            den = den // g
    return int(num), int(den)
