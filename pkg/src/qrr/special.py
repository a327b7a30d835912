"""Named special objects: Gaussian binomials, Rogers-Szego polynomials (both
representations), the Jacobi triple product check, and Nahm sums."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import lcm
from typing import Callable, NamedTuple, Optional

from .errors import NegativeExponent, NotPositiveDefinite
from .gaussian import MINUS_ONE, ONE, GaussianInt
from .quadform import (
    as_matrix,
    certified_min_eigenvalue,
    enumeration_radius,
    is_positive_definite,
    is_symmetric,
)
from .series import (
    Monomial,
    QSeries,
    div_binomial,
    inv_poch_table,
    mul_binomial,
    poch_infinite,
    qmono,
)
from .zseries import ZSeries, euler_z_product, theta_z


def gaussian_binomial(n: int, k: int, b: Monomial, order, den: Optional[int] = None) -> QSeries:
    """The Gaussian binomial [n k] in base b, exact through `order`.

    As a polynomial it has degree k*(n-k)*b.exp; with order at least that, the
    result is the exact polynomial.  Zero for k outside 0..n.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = lcm(den or 1, b.exp.denominator, Fraction(order).denominator)
    if k < 0 or k > n:
        return QSeries.zero(order, d)
    out = QSeries.one(order, d)
    bound = out.order_q
    for j in range(n - k + 1, n + 1):
        if j * b.exp <= bound:
            out = mul_binomial(out, b.unit, j * b.exp)
    for j in range(1, k + 1):
        if j * b.exp <= bound:
            out = div_binomial(out, b.unit, j * b.exp)
    return out


def rogers_szego_def(n: int, b: Monomial, order, den: Optional[int] = None) -> ZSeries:
    """H_n(t; b) by its defining sum over Gaussian binomials (t carried as z)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return ZSeries({j: gaussian_binomial(n, j, b, order, den) for j in range(n + 1)})


def rogers_szego_bw(n: int, b: Monomial, order, den: Optional[int] = None) -> ZSeries:
    """H_n(t; b) by the factored double-Pochhammer representation.

    Each r-term contains the factor t**(2r) * (-b/t; b**2)_r, which is the
    polynomial z**r * prod_{s<r} (z + b**(1+2s)); every intermediate object
    stays a polynomial with window inside [0, n].
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = lcm(den or 1, b.exp.denominator, Fraction(order).denominator)
    b_sq = Monomial(b.unit, 2 * b.exp)
    one = QSeries.one(order, d)
    half = n // 2
    upper = (n + 1) // 2
    acc = ZSeries.zero(order, d)
    for r in range(half + 1):
        part = ZSeries.embed(one).zshift(r)  # z**r
        for s in range(r):
            # (z + b**(1+2s))
            part = part * ZSeries({1: one, 0: QSeries.term(b.unit, (1 + 2 * s) * b.exp, order, d)})
        for s in range(upper - r):
            # (1 + z * b**(2s))
            part = part * ZSeries({0: one, 1: QSeries.term(ONE, 2 * s * b.exp, order, d)})
        acc = acc + part.scale_series(gaussian_binomial(half, r, b_sq, order, d))
    return acc


def rs_at(n: int, t: Monomial, b: Monomial, order, den: Optional[int] = None) -> QSeries:
    """H_n(t; b) with t specialized to a monomial."""
    return rogers_szego_bw(n, b, order, den).specialize(t)


class JtpReport(NamedTuple):
    ok: bool
    order: Fraction
    first_divergence: Optional[tuple]  # (z-power, q-exponent) or None


def jtp_check(order) -> JtpReport:
    """Verify the triple product (q, z*q^(1/2), q^(1/2)/z; q)_inf against the
    bilateral sum sum_n (-1)^n q^(n^2/2) z^n, z-coefficientwise through `order`."""
    order = Fraction(order)
    q = qmono(1)
    half = Monomial(MINUS_ONE, Fraction(1, 2))
    lhs = (
        euler_z_product(half, q, order, den=2)
        * euler_z_product(half, q, order, den=2).reflect()
        * ZSeries.embed(poch_infinite(q, q, order, den=2))
    )
    # n^2/2 = binom(n,2) + n/2
    rhs = theta_z(1, Fraction(1, 2), MINUS_ONE, 1, order, den=2)
    d = lhs.first_difference(rhs, order)
    return JtpReport(d is None, order, d)


@dataclass(frozen=True)
class NahmData:
    """Rank, quadratic matrix, linear vector, and constant of a Nahm sum."""

    a: tuple
    b: tuple
    c: Fraction = Fraction(0)
    rank: int = field(init=False)

    def __post_init__(self):
        a = as_matrix(self.a)
        b = tuple(Fraction(x) for x in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "rank", len(a))
        if len(b) != len(a):
            raise ValueError("linear vector length must match the matrix rank")
        if not is_symmetric(a):
            raise NotPositiveDefinite("matrix must be symmetric")
        if not is_positive_definite(a):
            raise NotPositiveDefinite("matrix must be positive definite")

    def exponent(self, n: tuple) -> Fraction:
        r = self.rank
        quad = sum(
            self.a[i][j] * n[i] * n[j] for i in range(r) for j in range(r)
        )
        return quad / 2 + sum(self.b[i] * n[i] for i in range(r)) + self.c


def nahm_series(data: NahmData, order) -> QSeries:
    """The Nahm sum q^(n.A.n/2 + n.B + C) / prod (q;q)_{n_i}, exact through
    `order`, including the global q^C prefactor."""
    order = Fraction(order)
    lam = certified_min_eigenvalue(data.a)
    lin = sum(abs(x) for x in data.b)
    radius = enumeration_radius(lam, lin, order - data.c)
    points = []
    den = order.denominator
    for n in iproduct(range(radius + 1), repeat=data.rank):
        e = data.exponent(n)
        if e > order:
            continue
        if e < 0:
            raise NegativeExponent(
                "Nahm exponent %s at lattice point %s" % (e, n)
            )
        points.append((n, e))
        den = lcm(den, e.denominator)
    q = qmono(1)
    table = inv_poch_table(q, radius, order, den)
    acc = QSeries.zero(order, den)
    for n, e in points:
        term = table[n[0]]
        for j in range(1, data.rank):
            term = term.mul(table[n[j]], bound=order - e)
        acc = acc + term.shift(e).truncate(order)
    return acc


def hypergeometric_sum(
    exponent: Callable[[int], Fraction],
    base: Monomial,
    order,
    den: Optional[int] = None,
    unit: Callable[[int], GaussianInt] = lambda n: ONE,
) -> QSeries:
    """sum_n unit(n) q^exponent(n) / (base;base)_n through `order`.

    The exponent must be eventually increasing (a quadratic with positive
    leading coefficient in practice); summation stops at the first n past the
    minimum whose exponent exceeds `order`.
    """
    order = Fraction(order)
    exps = []
    n = 0
    prev = None
    while True:
        e = Fraction(exponent(n))
        if e > order and (prev is None or e >= prev):
            break
        if e <= order:
            exps.append((n, e))
        prev = e
        n += 1
    d = den or 1
    for _, e in exps:
        d = lcm(d, e.denominator)
    d = lcm(d, order.denominator, base.exp.denominator)
    table = inv_poch_table(base, max((n for n, _ in exps), default=0), order, d)
    acc = QSeries.zero(order, d)
    for n, e in exps:
        acc = acc + table[n].shift(e).scale(unit(n))
    return acc
