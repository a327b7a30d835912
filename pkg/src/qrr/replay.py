"""Machine-checked derivation chains for the four double-sum identities.

Each chain re-derives one double-sum identity from one of the four classical
single-sum identities in the corpus.  A chain is an ordered list of steps;
every step is a standalone exact equality -- of truncated series, of z-Laurent
objects, or of rational polynomials -- checked through a truncation order.
The chain consults the product side of the identity under derivation only in
its final closure step, which reduces to a classical identity verified
independently at the same order.

The four chains carry the derivation ids "1.5" through "1.8":

    1.5  double-mod10-2-8   closed via rogers-mod5-1-4 under q -> q^2
    1.6  double-mod10-4-6   closed via rogers-mod5-2-3 under q -> q^2
    1.7  double-mod5-1-4    closed via rogers-mod4-1-4
    1.8  double-mod5-2-3    closed via rogers-mod4-2-3
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import corpus
from .gaussian import I, MINUS_I, MINUS_ONE, ONE, unit_pow
from .identity import LinForm, SignAtom, eval_product, eval_sum, verify
from .parser import parse_poly
from .series import Monomial, QSeries, inv_poch_table, poch_finite, qmono
from .special import gaussian_binomial, hypergeometric_sum, rs_at
from .zseries import ZSeries, euler_z_inverse, euler_z_product, theta_z


@dataclass
class StepReport:
    theorem: str
    step: int
    description: str
    status: str  # "pass" | "fail"
    order: Fraction
    first_divergence: Optional[object] = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "step": self.step,
            "description": self.description,
            "status": self.status,
            "order": str(self.order) if self.order.denominator != 1 else int(self.order),
            "first_divergence": None
            if self.first_divergence is None
            else str(self.first_divergence),
        }


class _Chain:
    """Collects StepReports for one derivation."""

    def __init__(self, theorem: str, order: Fraction):
        self.theorem = theorem
        self.order = order
        self.steps: List[StepReport] = []

    def series(self, description: str, lhs: QSeries, rhs: QSeries):
        self._add(description, lhs.first_difference(rhs, self.order))

    def zobjects(self, description: str, lhs: ZSeries, rhs: ZSeries):
        self._add(description, lhs.first_difference(rhs, self.order))

    def claim(self, description: str, ok: bool, divergence=None):
        self._add(description, None if ok else (divergence or "claim failed"))

    def _add(self, description: str, divergence):
        self.steps.append(
            StepReport(
                theorem=self.theorem,
                step=len(self.steps) + 1,
                description=description,
                status="pass" if divergence is None else "fail",
                order=self.order,
                first_divergence=divergence,
            )
        )


def chain_passes(steps: List[StepReport]) -> bool:
    return all(s.ok for s in steps)


# -- shared pieces ----------------------------------------------------------


def _closure_by_substitution(
    chain: _Chain, classical_name: str, single: QSeries, product: QSeries
):
    """Close a quarter-exponent chain: verify the classical identity at half
    order, substitute q -> q^2 into both of its sides, and match them against
    the reduced single sum and the target product."""
    half = chain.order / 2
    rep = verify(corpus.load(classical_name), half)
    base = corpus.load(classical_name)
    div = None
    if rep.status != "match":
        div = "classical base %s: %s" % (classical_name, rep.status)
    else:
        d = eval_sum(base, half).substitute_power(2).first_difference(single, chain.order)
        if d is not None:
            div = ("sum", d)
        else:
            d = (
                eval_product(base, half)
                .substitute_power(2)
                .first_difference(product, chain.order)
            )
            if d is not None:
                div = ("product", d)
    chain.claim(
        "closure: %s verified, then q -> q^2 matches the reduced sum and the product side"
        % classical_name,
        div is None,
        div,
    )


def _closure_direct(chain: _Chain, classical_name: str, single: QSeries, product: QSeries):
    """Close an integer-exponent chain: the reduced single sum and the target
    product are the two sides of a classical identity verified directly."""
    base = corpus.load(classical_name)
    rep = verify(base, chain.order)
    div = None
    if rep.status != "match":
        div = "classical base %s: %s" % (classical_name, rep.status)
    else:
        d = eval_sum(base, chain.order).first_difference(single, chain.order)
        if d is not None:
            div = ("sum", d)
        else:
            d = eval_product(base, chain.order).first_difference(product, chain.order)
            if d is not None:
                div = ("product", d)
    chain.claim(
        "closure: reduced sum and product side are the verified identity %s"
        % classical_name,
        div is None,
        div,
    )


def _quarter_chain(
    theorem: str,
    spec_name: str,
    classical_name: str,
    lin_coeff: Fraction,
    order: Fraction,
) -> List[StepReport]:
    """The shared six-step pipeline for derivations 1.5 and 1.6.

    lin_coeff is the linear exponent coefficient carried into the Euler
    factors: 3/4 for 1.5, 7/4 for 1.6.
    """
    spec = corpus.load(spec_name)
    chain = _Chain(theorem, order)
    q = qmono(1)

    # step 1: sign rewrite (-1)^binom(n-m,2) -> i^(n-m), valid at sum level
    rewritten = spec.with_sign((SignAtom("i", LinForm.make({"n": 1, "m": -1})),))
    lhs = eval_sum(spec, order)
    signed = eval_sum(rewritten, order)
    chain.series("sign rewrite: (-1)^binom(n-m,2) summand sign becomes i^(n-m)", lhs, signed)

    # step 2: symbolic exponent decomposition (order-independent)
    decomposition = parse_poly(
        "1/2*binom(m+n,2) + binom(m,2) + %s*m + binom(n,2) + %s*n"
        % (lin_coeff, lin_coeff)
    )
    chain.claim(
        "exponent splits as 1/2*binom(m+n,2) + binom(m,2) + binom(n,2) + %s*(m+n)"
        % lin_coeff,
        decomposition == spec.exponent,
        None if decomposition == spec.exponent else "polynomial coefficients differ",
    )

    # step 3: constant-term form over z
    z_plus = euler_z_product(Monomial(I, lin_coeff), q, order, den=4)
    z_minus = euler_z_product(Monomial(MINUS_I, lin_coeff), q, order, den=4)
    theta = theta_z(Fraction(1, 2), 0, MINUS_ONE, -1, order, den=4)
    extracted = (z_plus * z_minus * theta).ct()
    chain.series(
        "constant-term form: double sum equals ct of the two Euler factors times theta",
        signed,
        extracted,
    )

    # step 4: the Euler factors pair into a single product in z^2
    paired = euler_z_product(qmono(2 * lin_coeff), qmono(2), order, den=4).zstretch(2)
    chain.zobjects(
        "Euler pairing: the two factors multiply to the z^2 Euler product with base q^2",
        z_plus * z_minus,
        paired,
    )

    # step 5: extract the constant term of the paired form
    lin = 2 * lin_coeff - Fraction(3, 2)  # 0 for 1.5, 2 for 1.6
    single = hypergeometric_sum(lambda n: 2 * n * n + lin * n, qmono(2), order)
    chain.series(
        "constant-term extraction reduces to a single sum over (q^2;q^2)_n",
        (paired * theta).ct(),
        single,
    )

    # step 6: closure through the classical identity under q -> q^2
    _closure_by_substitution(chain, classical_name, single, eval_product(spec, order))
    return chain.steps


def replay_1_5(order) -> List[StepReport]:
    """Derive double-mod10-2-8 from rogers-mod5-1-4 (six steps)."""
    return _quarter_chain("1.5", "double_mod10_2_8", "rogers_mod5_1_4", Fraction(3, 4), Fraction(order))


def replay_1_6(order) -> List[StepReport]:
    """Derive double-mod10-4-6 from rogers-mod5-2-3 (six steps)."""
    return _quarter_chain("1.6", "double_mod10_4_6", "rogers_mod5_2_3", Fraction(7, 4), Fraction(order))


def replay_1_7(order) -> List[StepReport]:
    """Derive double-mod5-1-4 from rogers-mod4-1-4 (three steps)."""
    order = Fraction(order)
    spec = corpus.load("double_mod5_1_4")
    chain = _Chain("1.7", order)
    q2, q4 = qmono(2), qmono(4)
    n_max = 2 * int(math.isqrt(int(order))) + 2
    while Fraction(n_max * n_max, 4) > order:
        n_max -= 1
    table = inv_poch_table(q2, n_max, order, 4)

    # step 1: regroup along N = m + n via Gaussian binomials
    regrouped = QSeries.zero(order, 4)
    inners = []
    for n in range(n_max + 1):
        e = Fraction(n * n, 4)
        inner = QSeries.zero(order, 4)
        for m in range(n + 1):
            gb = gaussian_binomial(n, m, q2, order, 4)
            inner = inner + (gb if m % 2 == 0 else -gb)
        inners.append(inner)
        regrouped = regrouped + inner.mul(table[n], bound=order - e).shift(e).truncate(order)
    chain.series(
        "regrouping along m+n: double sum equals sum over n of the alternating"
        " Gaussian-binomial inner sum over (q^2;q^2)_n",
        eval_sum(spec, order),
        regrouped,
    )

    # step 2: the inner sums are H_n(-1; q^2): zero for odd n, (q^2;q^4)_{n/2}
    # for even n, and the telescoped total is the single sum over (q^4;q^4)_n
    minus_one = Monomial(MINUS_ONE, Fraction(0))
    div = None
    for n in range(n_max + 1):
        closed = (
            QSeries.zero(order, 4)
            if n % 2
            else poch_finite(Monomial(ONE, 2), q4, n // 2, order, 4)
        )
        d = inners[n].first_difference(rs_at(n, minus_one, q2, order, 4), order)
        if d is None:
            d = inners[n].first_difference(closed, order)
        if d is not None:
            div = (n, d)
            break
    single = hypergeometric_sum(lambda n: n * n, q4, order)
    if div is None:
        d = regrouped.first_difference(single, order)
        if d is not None:
            div = ("total", d)
    chain.claim(
        "inner sums collapse: H_n(-1;q^2) vanishes for odd n and telescopes the"
        " even terms to the single sum over (q^4;q^4)_n",
        div is None,
        div,
    )

    # step 3: closure through the classical identity
    _closure_direct(chain, "rogers_mod4_1_4", single, eval_product(spec, order))
    return chain.steps


def replay_1_8(order) -> List[StepReport]:
    """Derive double-mod5-2-3 from rogers-mod4-2-3 (five steps)."""
    order = Fraction(order)
    spec = corpus.load("double_mod5_2_3")
    chain = _Chain("1.8", order)
    q2, q4 = qmono(2), qmono(4)
    head = order + 1  # co-factor headroom: the theta carries a negative q-shift

    # step 1: termwise sign/exponent rewrite as a full-series equality
    n_max = 0
    while Fraction((n_max + 1) ** 2, 4) + (n_max + 1) <= order:
        n_max += 1
    table = inv_poch_table(q2, n_max, order, 4)
    rewritten = QSeries.zero(order, 4)
    for total in range(n_max + 1):
        e = Fraction(total * (total - 2), 4) + Fraction(3 * total, 2)
        if e > order:
            continue
        for m in range(total + 1):
            n = total - m
            u = unit_pow(MINUS_I, n - m) * unit_pow(I, n + m)
            term = table[m].mul(table[n], bound=order - e)
            rewritten = rewritten + term.shift(e).truncate(order).scale(u)
    chain.series(
        "rewrite: summand equals (-i)^(n-m) i^(n+m) q^((m+n)(m+n-2)/4 + 3(m+n)/2)"
        " over the same denominators",
        eval_sum(spec, order),
        rewritten,
    )

    # step 2: constant-term form with the shifted theta
    z_plus = euler_z_inverse(Monomial(I, Fraction(3, 2)), q2, head, den=4)
    z_minus = euler_z_inverse(Monomial(MINUS_I, Fraction(3, 2)), q2, head, den=4)
    theta = theta_z(Fraction(1, 2), Fraction(-1, 4), I, -1, head, den=4)
    chain.series(
        "constant-term form: rewritten sum equals ct of the two inverse Euler"
        " factors times the i-signed theta",
        rewritten,
        (z_plus * z_minus * theta).ct().truncate(order),
    )

    # step 3: the inverse Euler factors collapse in z^2
    collapsed = euler_z_inverse(Monomial(MINUS_ONE, 3), q4, head, den=4).zstretch(2)
    chain.claim(
        "Euler collapse: the paired factors equal the z^2 inverse Euler product"
        " with base q^4",
        (z_plus * z_minus).same_through(collapsed, order),
        (z_plus * z_minus).first_difference(collapsed, order),
    )

    # step 4: extract the constant term of the collapsed form
    single = hypergeometric_sum(lambda n: n * n + 2 * n, q4, order)
    chain.series(
        "constant-term extraction reduces to a single sum over (q^4;q^4)_n",
        (collapsed * theta).ct().truncate(order),
        single,
    )

    # step 5: closure through the classical identity
    _closure_direct(chain, "rogers_mod4_2_3", single, eval_product(spec, order))
    return chain.steps


REPLAYS: Dict[str, Callable[[object], List[StepReport]]] = {
    "1.5": replay_1_5,
    "1.6": replay_1_6,
    "1.7": replay_1_7,
    "1.8": replay_1_8,
}


def replay(theorem: str, order) -> List[StepReport]:
    """Run one derivation chain by id ("1.5" through "1.8")."""
    fn = REPLAYS.get(theorem)
    if fn is None:
        raise KeyError("unknown derivation id %r (have %s)" % (theorem, sorted(REPLAYS)))
    return fn(order)
