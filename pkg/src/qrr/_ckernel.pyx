# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython convolution kernels for the series hot path.

Coefficients are arbitrary-precision Python ints; only the loop indexing is
compiled, which is where the pure-Python fallback spends most of its time.
Semantics match qrr._kernel_py exactly.
"""


def conv_real(list a, list b, Py_ssize_t nout):
    cdef Py_ssize_t i, j, jmax, la, lb
    cdef list c = [0] * nout
    cdef object ai, bj
    la = len(a)
    lb = len(b)
    if la > nout:
        la = nout
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        jmax = nout - i
        if jmax > lb:
            jmax = lb
        for j in range(jmax):
            bj = b[j]
            if bj:
                c[i + j] = c[i + j] + ai * bj
    return c


def conv_complex(list ar, list ai, list br, list bi, Py_ssize_t nout):
    cdef Py_ssize_t i, j, k, jmax, la, lb
    cdef list cr = [0] * nout
    cdef list ci = [0] * nout
    cdef object xr, xi, yr, yi
    la = len(ar)
    lb = len(br)
    if la > nout:
        la = nout
    for i in range(la):
        xr = ar[i]
        xi = ai[i]
        if not xr and not xi:
            continue
        jmax = nout - i
        if jmax > lb:
            jmax = lb
        for j in range(jmax):
            yr = br[j]
            yi = bi[j]
            if not yr and not yi:
                continue
            k = i + j
            cr[k] = cr[k] + (xr * yr - xi * yi)
            ci[k] = ci[k] + (xr * yi + xi * yr)
    return cr, ci
