"""Pure-Python convolution kernels (fallback when the Cython extension is absent).

Inputs are plain lists of Python ints, so arithmetic stays exact at arbitrary
precision.  `nout` bounds the output length: c[k] = sum_{i+j=k} a[i]*b[j] for
k < nout.
"""


def conv_real(a, b, nout):
    c = [0] * nout
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
                c[i + j] += ai * bj
    return c


def conv_complex(ar, ai, br, bi, nout):
    cr = [0] * nout
    ci = [0] * nout
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
            cr[k] += xr * yr - xi * yi
            ci[k] += xr * yi + xi * yr
    return cr, ci
