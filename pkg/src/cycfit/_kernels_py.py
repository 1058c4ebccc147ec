"""Pure-Python reference kernels.

These are the hot inner loops of the package: exact cyclic convolution
(multiplication in Z[x]/(x^M - 1), which carries all cyclotomic-integer
products), cyclic convolution over Z/n (group-ring multiplication), and
weighted power products in F_q (shadow evaluation of derivative classes).
The compiled extension in ``_kernels.pyx`` implements the same contracts;
``cycfit.kernels`` selects one implementation at import time.

All functions take and return plain ``list``/``int`` values so the two
implementations are interchangeable.
"""

IMPL = "python"


def conv_cyclic(a, b, M):
    """Cyclic convolution of integer coefficient lists modulo x^M - 1.

    ``a`` and ``b`` may be shorter than ``M``; the result has length ``M``.
    Exact over Python integers (no overflow).
    """
    out = [0] * M
    if len(a) > len(b):
        a, b = b, a
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    k = i + j
                    if k >= M:
                        k -= M
                    out[k] += x * y
    return out


def conv_cyclic_mod(a, b, M, mod):
    """Cyclic convolution modulo x^M - 1 with coefficients in Z/mod."""
    out = [0] * M
    if len(a) > len(b):
        a, b = b, a
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    k = i + j
                    if k >= M:
                        k -= M
                    out[k] = (out[k] + x * y) % mod
    return out


def weighted_power_product(bases, exps, q):
    """prod(bases[i] ** exps[i]) mod q for nonnegative exponents."""
    out = 1
    for base, e in zip(bases, exps):
        if e:
            out = out * pow(base, e, q) % q
    return out
