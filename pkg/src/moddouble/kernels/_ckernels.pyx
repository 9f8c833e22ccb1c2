# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled normal-ordering kernels; same contract as ``_pykernels``."""
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF
from libc.stdlib cimport malloc, free


cdef long* _to_buffer(rows, Py_ssize_t n) except NULL:
    cdef Py_ssize_t m = len(rows), r, i
    cdef long* buf = <long*>malloc((m * n + 1) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    for r in range(m):
        row = rows[r]
        for i in range(n):
            buf[r * n + i] = row[i]
    return buf


def pair_product(exps_a, exps_b, skew, weights=None, long max_deg=0):
    cdef Py_ssize_t n = len(skew)
    cdef Py_ssize_t na = len(exps_a), nb = len(exps_b)
    cdef Py_ssize_t ia, ib, i, j
    cdef long ph, s
    cdef bint trunc = weights is not None
    cdef long* A = _to_buffer(exps_a, n)
    cdef long* B = NULL
    cdef long* S = NULL
    cdef long* W = NULL
    cdef long* u = NULL
    cdef long* dega = NULL
    cdef long* degb = NULL
    cdef tuple key
    cdef object o
    out = {}
    try:
        B = _to_buffer(exps_b, n)
        S = _to_buffer(skew, n)
        u = <long*>malloc((n + 1) * sizeof(long))
        dega = <long*>malloc((na + 1) * sizeof(long))
        degb = <long*>malloc((nb + 1) * sizeof(long))
        if u == NULL or dega == NULL or degb == NULL:
            raise MemoryError()
        if trunc:
            W = _to_buffer([weights], n)
            for ia in range(na):
                s = 0
                for i in range(n):
                    s += W[i] * A[ia * n + i]
                dega[ia] = s
            for ib in range(nb):
                s = 0
                for i in range(n):
                    s += W[i] * B[ib * n + i]
                degb[ib] = s
        for ia in range(na):
            for i in range(n):
                u[i] = 0
            for j in range(n):
                if A[ia * n + j] != 0:
                    for i in range(j):
                        u[i] += S[j * n + i] * A[ia * n + j]
            for ib in range(nb):
                if trunc and dega[ia] + degb[ib] > max_deg:
                    continue
                ph = 0
                for i in range(n):
                    ph += u[i] * B[ib * n + i]
                key = PyTuple_New(n)
                for i in range(n):
                    o = A[ia * n + i] + B[ib * n + i]
                    Py_INCREF(o)
                    PyTuple_SET_ITEM(key, i, o)
                entry = out.get(key)
                if entry is None:
                    out[key] = [(ia, ib, 2 * ph)]
                else:
                    entry.append((ia, ib, 2 * ph))
    finally:
        free(A)
        free(B)
        free(S)
        free(W)
        free(u)
        free(dega)
        free(degb)
    return out


def monomial_phase(x, y, skew):
    cdef Py_ssize_t n = len(skew), i, j
    cdef long ph = 0, xj
    for j in range(n):
        xj = x[j]
        if xj:
            row = skew[j]
            for i in range(j):
                ph += <long>row[i] * xj * <long>y[i]
    return 2 * ph
