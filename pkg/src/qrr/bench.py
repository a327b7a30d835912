"""Benchmark the pure-Python kernels against the compiled extension.

Run as `python -m qrr.bench`.  Times raw convolution at several sizes and one
end-to-end identity verification per backend; with only the pure backend
built, reports that and times it alone.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from . import _backend, corpus
from .identity import verify

SIZES = (64, 256, 1024, 4096)
REPEATS = 5


def _time(fn, repeats=REPEATS) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(out=print):
    rng = random.Random(12345)
    out("convolution kernels (best of %d, seconds)" % REPEATS)
    header = "%8s" % "n"
    for name in _backend.available_backends():
        header += "  %12s-real  %12s-cplx" % (name, name)
    out(header)
    for n in SIZES:
        a = [rng.randint(-9, 9) for _ in range(n)]
        b = [rng.randint(-9, 9) for _ in range(n)]
        line = "%8d" % n
        for name in _backend.available_backends():
            _backend.set_backend(name)
            tr = _time(lambda: _backend.conv_real(a, b, 2 * n - 1))
            tc = _time(lambda: _backend.conv_complex(a, b, b, a, 2 * n - 1))
            line += "  %17.6f  %17.6f" % (tr, tc)
        out(line)


def bench_verify(out=print, order=Fraction(120)):
    spec = corpus.load("double_mod10_2_8")
    out("")
    out("end-to-end verify of %s at order %s (best of 3, seconds)" % (spec.name, order))
    for name in _backend.available_backends():
        _backend.set_backend(name)
        t = _time(lambda: verify(spec, order), repeats=3)
        out("%10s  %10.3f" % (name, t))


def main():
    default = _backend.BACKEND
    try:
        bench_kernels()
        bench_verify()
    finally:
        _backend.set_backend(default)


if __name__ == "__main__":
    main()
