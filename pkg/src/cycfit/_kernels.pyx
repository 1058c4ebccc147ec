# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: cyclic convolution and F_q power products.

Same contracts as ``_kernels_py``.  ``conv_cyclic`` guards against int64
overflow (coefficients in cyclotomic-integer products can grow without
bound) and delegates to the exact pure-Python loop when the conservative
bound max|a| * max|b| * min(len) does not fit in 62 bits.
"""

from libc.stdlib cimport free, malloc

from . import _kernels_py

IMPL = "cython"

DEF I64_GUARD = 4611686018427387904  # 2**62

cdef extern from *:
    ctypedef unsigned long long uint128 "unsigned __int128"


cdef inline unsigned long long mulmod_u64(unsigned long long a,
                                          unsigned long long b,
                                          unsigned long long q) nogil:
    return <unsigned long long>((<uint128>a * b) % q)


def conv_cyclic(a, b, M):
    """Cyclic convolution mod x^M - 1; exact (int64 fast path + fallback)."""
    cdef long long ma = 0, mb = 0, v
    cdef Py_ssize_t i, j, k, la = len(a), lb = len(b)
    cdef Py_ssize_t cM = M
    for i in range(la):
        v = a[i] if -I64_GUARD < a[i] < I64_GUARD else I64_GUARD
        if v < 0:
            v = -v
        if v > ma:
            ma = v
    for i in range(lb):
        v = b[i] if -I64_GUARD < b[i] < I64_GUARD else I64_GUARD
        if v < 0:
            v = -v
        if v > mb:
            mb = v
    cdef long long nmin = la if la < lb else lb
    if ma == 0 or mb == 0:
        return [0] * M
    if ma >= I64_GUARD // (mb * nmin if mb * nmin < I64_GUARD else I64_GUARD):
        return _kernels_py.conv_cyclic(a, b, M)

    cdef long long *ca = <long long *>malloc(la * sizeof(long long))
    cdef long long *cb = <long long *>malloc(lb * sizeof(long long))
    cdef long long *out = <long long *>malloc(cM * sizeof(long long))
    if ca == NULL or cb == NULL or out == NULL:
        free(ca); free(cb); free(out)
        raise MemoryError
    try:
        for i in range(la):
            ca[i] = a[i]
        for i in range(lb):
            cb[i] = b[i]
        for i in range(cM):
            out[i] = 0
        with nogil:
            for i in range(la):
                if ca[i] != 0:
                    for j in range(lb):
                        k = i + j
                        if k >= cM:
                            k -= cM
                        out[k] += ca[i] * cb[j]
        return [out[i] for i in range(cM)]
    finally:
        free(ca); free(cb); free(out)


def conv_cyclic_mod(a, b, M, mod):
    """Cyclic convolution mod x^M - 1 over Z/mod (mod < 2**31)."""
    if mod >= 1 << 31:
        return _kernels_py.conv_cyclic_mod(a, b, M, mod)
    cdef Py_ssize_t i, j, k, la = len(a), lb = len(b)
    cdef Py_ssize_t cM = M
    cdef long long q = mod
    cdef long long *ca = <long long *>malloc(la * sizeof(long long))
    cdef long long *cb = <long long *>malloc(lb * sizeof(long long))
    cdef long long *out = <long long *>malloc(cM * sizeof(long long))
    if ca == NULL or cb == NULL or out == NULL:
        free(ca); free(cb); free(out)
        raise MemoryError
    try:
        for i in range(la):
            ca[i] = a[i] % q
        for i in range(lb):
            cb[i] = b[i] % q
        for i in range(cM):
            out[i] = 0
        with nogil:
            for i in range(la):
                if ca[i] != 0:
                    for j in range(lb):
                        k = i + j
                        if k >= cM:
                            k -= cM
                        out[k] = (out[k] + ca[i] * cb[j]) % q
        return [out[i] for i in range(cM)]
    finally:
        free(ca); free(cb); free(out)


def weighted_power_product(bases, exps, q):
    """prod(bases[i] ** exps[i]) mod q (q < 2**63, exponents >= 0)."""
    if q >= 1 << 63:
        return _kernels_py.weighted_power_product(bases, exps, q)
    cdef unsigned long long uq = q, acc = 1 % q, base, cur
    cdef unsigned long long e
    cdef Py_ssize_t i, n = len(bases)
    for i in range(n):
        e = exps[i]
        if e == 0:
            continue
        base = bases[i] % uq
        cur = 1
        while e:
            if e & 1:
                cur = mulmod_u64(cur, base, uq)
            base = mulmod_u64(base, base, uq)
            e >>= 1
        acc = mulmod_u64(acc, cur, uq)
    return acc
