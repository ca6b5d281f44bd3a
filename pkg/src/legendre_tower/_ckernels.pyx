# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled finite-field inner loops; same contracts as ``_pykernels``."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t, uint64_t

# Largest modulus for which products of two residues fit in uint64.
MAX_MODULUS = 1 << 31


def poly_mul_mod(a, b, m):
    if not a or not b:
        return []
    if m >= MAX_MODULUS:
        from ._pykernels import poly_mul_mod as slow
        return slow(a, b, m)
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    cdef uint64_t mm = m
    cdef uint64_t *xa = <uint64_t *> malloc(la * sizeof(uint64_t))
    cdef uint64_t *xb = <uint64_t *> malloc(lb * sizeof(uint64_t))
    cdef uint64_t *out = <uint64_t *> malloc((la + lb - 1) * sizeof(uint64_t))
    cdef uint64_t ai
    try:
        for i in range(la):
            xa[i] = a[i] % m
        for j in range(lb):
            xb[j] = b[j] % m
        for i in range(la + lb - 1):
            out[i] = 0
        for i in range(la):
            ai = xa[i]
            if ai == 0:
                continue
            for j in range(lb):
                out[i + j] = (out[i + j] + ai * xb[j]) % mm
        return [out[i] for i in range(la + lb - 1)]
    finally:
        free(xa)
        free(xb)
        free(out)


def count_points_fp(a2, a4, a6, p):
    if p >= MAX_MODULUS:
        raise OverflowError("modulus too large for the compiled counter")
    cdef int64_t pp = p, x, y, v
    cdef int64_t c2 = a2 % p, c4 = a4 % p, c6 = a6 % p
    cdef unsigned char *nsq = <unsigned char *> malloc(pp)
    cdef int64_t total = 1
    try:
        for y in range(pp):
            nsq[y] = 0
        for y in range(pp):
            nsq[(y * y) % pp] += 1
        for x in range(pp):
            v = ((((x + c2) % pp) * x + c4) % pp * x + c6) % pp
            total += nsq[v]
        return total
    finally:
        free(nsq)
