"""Positive-definiteness checks and certified enumeration bounds.

All certification is exact rational arithmetic (Sylvester leading minors).
Floating point (numpy) is used only to *guess* an eigenvalue lower bound,
which is then verified by checking that A - lambda*I is positive definite
with Fractions; a failed guess is halved until it certifies.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NotPositiveDefinite

Matrix = Sequence[Sequence[Fraction]]


def as_matrix(rows) -> tuple:
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    return m


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def leading_minors(a: Matrix) -> list:
    """Leading principal minors, fraction-exact (ranks here are tiny)."""
    a = as_matrix(a)
    return [_det(_block(a, k + 1)) for k in range(len(a))]


def _block(a: Matrix, k: int):
    return [row[:k] for row in a[:k]]


def _det(a) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(a[0][0])
    total = Fraction(0)
    for j in range(n):
        if a[0][j] == 0:
            continue
        sub = [row[:j] + row[j + 1 :] for row in a[1:]]
        total += (-1) ** j * Fraction(a[0][j]) * _det(sub)
    return total


def is_positive_definite(a: Matrix) -> bool:
    """Sylvester's criterion on the leading principal minors."""
    a = as_matrix(a)
    if not is_symmetric(a):
        return False
    return all(m > 0 for m in leading_minors(a))


def certified_min_eigenvalue(a: Matrix) -> Fraction:
    """A positive rational lambda with A - lambda*I positive definite.

    Numerically estimated, then certified exactly; raises NotPositiveDefinite
    if A is not positive definite.
    """
    a = as_matrix(a)
    if not is_positive_definite(a):
        raise NotPositiveDefinite("matrix fails Sylvester's criterion")
    n = len(a)
    est = float(np.linalg.eigvalsh(np.array(a, dtype=float)).min())
    cand = Fraction(max(est, 1e-9) * 0.9).limit_denominator(1 << 20)
    while cand > 0:
        shifted = [
            [a[i][j] - (cand if i == j else 0) for j in range(n)] for i in range(n)
        ]
        if is_positive_definite(shifted):
            return cand
        cand /= 2
    raise NotPositiveDefinite("could not certify a positive eigenvalue bound")


def enumeration_radius(lam: Fraction, lin_bound: Fraction, order: Fraction) -> int:
    """Smallest box radius R so that any lattice point with a coordinate > R
    has quadratic-form value above `order`.

    Uses the lower bound value(n) >= lam/2 * |n|^2 - lin_bound * |n| and the
    fact that this is increasing beyond its vertex; the defining inequality is
    re-checked with exact rationals.
    """
    lam = Fraction(lam)
    lin_bound = Fraction(lin_bound)
    order = Fraction(order)
    if lam <= 0:
        raise NotPositiveDefinite("nonpositive eigenvalue bound")
    vertex = lin_bound / lam
    disc = lin_bound * lin_bound + 2 * lam * max(order, Fraction(0))
    r = max(0, int((float(lin_bound) + float(disc) ** 0.5) / float(lam)))

    def excluded(rr):
        v = Fraction(rr)
        return v >= vertex and lam / 2 * v * v - lin_bound * v > order

    while not excluded(r + 1):
        r += 1
    return r
