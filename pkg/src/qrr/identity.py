"""Identity descriptions (sum side / product side) and their evaluation.

An IdentitySpec is the parsed form of one sum-product identity: summation
indices, a sign rule built from unit-valued atoms, a rational quadratic
exponent polynomial, one Pochhammer denominator per index, and a list of
infinite/finite product factors.  eval_sum and eval_product expand both sides
exactly through a truncation order; verify compares them coefficient by
coefficient.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import lcm
from typing import Dict, Optional, Tuple

from .errors import (
    NegativeExponent,
    NotPositiveDefinite,
    SemanticError,
    UnboundedEnumeration,
)
from .gaussian import MINUS_ONE, ONE, GaussianInt, i_pow, sign_binom2
from .quadform import certified_min_eigenvalue, enumeration_radius, is_positive_definite
from .series import Monomial, QSeries, div_binomial, inv_poch_table, mul_binomial, poch_finite


@dataclass(frozen=True)
class LinForm:
    """Integer linear form c1*x1 + ... + const over the summation indices."""

    coeffs: Tuple[Tuple[str, int], ...]
    const: int = 0

    @classmethod
    def make(cls, coeffs: Dict[str, int], const: int = 0) -> "LinForm":
        return cls(tuple(sorted((k, v) for k, v in coeffs.items() if v)), const)

    def eval(self, point: Dict[str, int]) -> int:
        return self.const + sum(c * point[x] for x, c in self.coeffs)

    def names(self):
        return {x for x, _ in self.coeffs}

    def __str__(self):
        parts = ["%+d*%s" % (c, x) for x, c in self.coeffs]
        if self.const or not parts:
            parts.append("%+d" % self.const)
        return "".join(parts).lstrip("+")


@dataclass(frozen=True)
class SignAtom:
    """One unit-valued factor of a sign rule."""

    kind: str  # "neg1" | "neg1_binom" | "i"
    form: LinForm

    def eval(self, point: Dict[str, int]) -> GaussianInt:
        v = self.form.eval(point)
        if self.kind == "neg1":
            return MINUS_ONE if v % 2 else ONE
        if self.kind == "neg1_binom":
            return sign_binom2(v)
        if self.kind == "i":
            return i_pow(v)
        raise ValueError("unknown sign atom kind %r" % self.kind)


def eval_sign(atoms, point: Dict[str, int]) -> GaussianInt:
    u = ONE
    for a in atoms:
        u = u * a.eval(point)
    return u


@dataclass(frozen=True)
class ExponentPoly:
    """Rational polynomial of total degree <= 2 in the summation indices."""

    quad: Tuple[Tuple[Tuple[str, str], Fraction], ...]  # keys (x, y) with x <= y
    lin: Tuple[Tuple[str, Fraction], ...]
    const: Fraction = Fraction(0)

    @classmethod
    def make(cls, quad: Dict, lin: Dict, const=Fraction(0)) -> "ExponentPoly":
        q = tuple(
            sorted((tuple(sorted(k)), Fraction(v)) for k, v in quad.items() if v)
        )
        l = tuple(sorted((k, Fraction(v)) for k, v in lin.items() if v))
        return cls(q, l, Fraction(const))

    def eval(self, point: Dict[str, int]) -> Fraction:
        total = self.const
        for (x, y), c in self.quad:
            total += c * point[x] * point[y]
        for x, c in self.lin:
            total += c * point[x]
        return total

    def names(self):
        out = set()
        for (x, y), _ in self.quad:
            out.update((x, y))
        out.update(x for x, _ in self.lin)
        return out

    def quadratic_matrix(self, indices) -> list:
        """Symmetric Q with value = 1/2 n.Q.n + linear + const."""
        qd = dict(self.quad)
        n = len(indices)
        mat = [[Fraction(0)] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                if a == b:
                    mat[a][a] = 2 * qd.get((indices[a], indices[a]), Fraction(0))
                else:
                    key = tuple(sorted((indices[a], indices[b])))
                    mat[a][b] = qd.get(key, Fraction(0))
        return mat

    def linear_vector(self, indices) -> list:
        ld = dict(self.lin)
        return [ld.get(x, Fraction(0)) for x in indices]


@dataclass(frozen=True)
class ProductFactor:
    """(x; base)_inf or (x; base)_n, to the power +1 or -1."""

    x: Monomial
    base: Monomial
    power: int = 1
    finite: Optional[int] = None


@dataclass(frozen=True)
class IdentitySpec:
    name: str
    den: int
    indices: Tuple[str, ...]
    sign: Tuple[SignAtom, ...]
    exponent: ExponentPoly
    denoms: Tuple[Tuple[str, Monomial], ...]  # (index, Pochhammer base)
    product: Tuple[ProductFactor, ...]
    bounds: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.den <= 0:
            raise SemanticError("%s: exponent denominator must be positive" % self.name)
        if len(set(self.indices)) != len(self.indices):
            raise SemanticError("%s: duplicate summation index" % self.name)
        denom_idx = [x for x, _ in self.denoms]
        for x in denom_idx:
            if denom_idx.count(x) > 1:
                raise SemanticError(
                    "%s: index %s appears in more than one denominator" % (self.name, x)
                )
        if set(denom_idx) != set(self.indices):
            missing = set(self.indices) - set(denom_idx)
            extra = set(denom_idx) - set(self.indices)
            raise SemanticError(
                "%s: denominators must cover each index exactly once"
                " (missing %s, unknown %s)" % (self.name, sorted(missing), sorted(extra))
            )
        used = self.exponent.names()
        for a in self.sign:
            used |= a.form.names()
        unbound = used - set(self.indices)
        if unbound:
            raise SemanticError("%s: unbound names %s" % (self.name, sorted(unbound)))
        for x, base in self.denoms:
            if base.exp <= 0 or base.unit != ONE:
                raise SemanticError(
                    "%s: denominator base for %s must be a positive power of q" % (self.name, x)
                )
        for f in self.product:
            if f.base.exp <= 0 or f.base.unit != ONE:
                raise SemanticError("%s: product factor base must be a positive power of q" % self.name)
            if f.finite is None and f.x.exp <= 0:
                raise SemanticError(
                    "%s: infinite product factor needs positive q-order argument" % self.name
                )
            if f.power not in (1, -1):
                raise SemanticError("%s: factor power must be +1 or -1" % self.name)
        if self.bounds is not None:
            if len(self.bounds) != len(self.indices):
                raise SemanticError("%s: one bound per index required" % self.name)
            if any(b < 0 for b in self.bounds):
                raise SemanticError("%s: bounds must be nonnegative" % self.name)
        else:
            mat = self.exponent.quadratic_matrix(self.indices)
            if not is_positive_definite(mat) and not self._orthant_coercive(mat):
                raise SemanticError(
                    "%s: exponent quadratic form admits no finite enumeration;"
                    " explicit bounds are required" % self.name
                )

    def _orthant_coercive(self, mat) -> bool:
        """Entrywise-nonnegative Q with positive diagonal (and nonnegative
        linear part) is coercive coordinatewise on the nonnegative orthant
        even when it is only positive semidefinite."""
        n = len(mat)
        if any(mat[i][i] <= 0 for i in range(n)):
            return False
        if any(mat[i][j] < 0 for i in range(n) for j in range(n)):
            return False
        return all(c >= 0 for c in self.exponent.linear_vector(self.indices))

    def with_sign(self, atoms) -> "IdentitySpec":
        return IdentitySpec(
            self.name, self.den, self.indices, tuple(atoms), self.exponent,
            self.denoms, self.product, self.bounds,
        )

    def with_bounds(self, bounds) -> "IdentitySpec":
        return IdentitySpec(
            self.name, self.den, self.indices, self.sign, self.exponent,
            self.denoms, self.product, tuple(bounds) if bounds else None,
        )


@dataclass
class VerifyReport:
    name: str
    status: str  # "match" | "mismatch" | "error"
    order: Fraction
    first_mismatch: Optional[tuple] = None  # (exp, lhs, rhs)
    fractional_residue: list = field(default_factory=list)
    imaginary_residue: list = field(default_factory=list)
    elapsed_ms: float = 0.0
    error: Optional[str] = None

    def to_json(self) -> dict:
        fm = None
        if self.first_mismatch is not None:
            e, lhs, rhs = self.first_mismatch
            fm = {"exp": _frac_str(e), "lhs": [lhs.re, lhs.im], "rhs": [rhs.re, rhs.im]}
        out = {
            "identity": self.name,
            "status": self.status,
            "order": _frac_str(self.order),
            "first_mismatch": fm,
            "fractional_residue": [_frac_str(e) for e in self.fractional_residue],
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.error:
            out["error"] = self.error
        return out


def _frac_str(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


# -- enumeration ------------------------------------------------------------


def auto_bounds(spec: IdentitySpec, order) -> Tuple[int, ...]:
    """Per-index bounds so every excluded lattice point has exponent > order."""
    order = Fraction(order)
    mat = spec.exponent.quadratic_matrix(spec.indices)
    target = order - spec.exponent.const
    if is_positive_definite(mat):
        lam = certified_min_eigenvalue(mat)
        lin = sum(abs(c) for c in spec.exponent.linear_vector(spec.indices))
        radius = enumeration_radius(lam, lin, target)
        return tuple(radius for _ in spec.indices)
    if spec._orthant_coercive(mat):
        # value >= Q_ii/2 * n_i**2 for each coordinate on the orthant
        return tuple(
            enumeration_radius(mat[i][i], Fraction(0), target)
            for i in range(len(spec.indices))
        )
    raise NotPositiveDefinite(
        "%s: quadratic form admits no finite enumeration" % spec.name
    )


def _sum_den(spec: IdentitySpec, order: Fraction) -> int:
    d = lcm(spec.den, order.denominator)
    for _, base in spec.denoms:
        d = lcm(d, base.exp.denominator)
    return d


def eval_sum(spec: IdentitySpec, order) -> QSeries:
    """Exact truncated expansion of the sum side."""
    order = Fraction(order)
    if spec.bounds is not None:
        bounds = spec.bounds
    else:
        try:
            bounds = auto_bounds(spec, order)
        except NotPositiveDefinite as ex:
            raise UnboundedEnumeration(str(ex)) from ex
    den = _sum_den(spec, order)
    base_of = dict(spec.denoms)
    # bounds are aligned with the declared index order
    tables = [
        inv_poch_table(base_of[x], bound, order, den)
        for x, bound in zip(spec.indices, bounds)
    ]
    names = list(spec.indices)
    acc = QSeries.zero(order, den)
    for point_vals in iproduct(*(range(b + 1) for b in bounds)):
        point = dict(zip(names, point_vals))
        e = spec.exponent.eval(point)
        if e > order:
            continue
        if e < 0:
            raise NegativeExponent(
                "%s: exponent %s at %s" % (spec.name, e, point)
            )
        if (e * spec.den).denominator != 1:
            raise SemanticError(
                "%s: exponent %s at %s not representable with den %d"
                % (spec.name, e, point, spec.den)
            )
        term = tables[0][point_vals[0]]
        for j in range(1, len(tables)):
            term = term.mul(tables[j][point_vals[j]], bound=order - e)
        acc = acc + term.shift(e).truncate(order).scale(eval_sign(spec.sign, point))
    return acc


def eval_product(spec: IdentitySpec, order) -> QSeries:
    """Exact truncated expansion of the product side."""
    order = Fraction(order)
    den = lcm(spec.den, order.denominator)
    for f in spec.product:
        den = lcm(den, f.x.exp.denominator, f.base.exp.denominator)
    out = QSeries.one(order, den)
    for f in spec.product:
        if f.finite is not None:
            p = poch_finite(f.x, f.base, f.finite, order, den)
            out = out.mul(p if f.power == 1 else p.invert_unit())
            continue
        k = 0
        while True:
            e = f.x.exp + k * f.base.exp
            if e > order:
                break
            if f.power == 1:
                out = mul_binomial(out, f.x.unit, e)
            else:
                out = div_binomial(out, f.x.unit, e)
            k += 1
    return out


def verify(spec: IdentitySpec, order) -> VerifyReport:
    """Compare both sides exponent by exponent through `order`."""
    order = Fraction(order)
    t0 = time.perf_counter()
    try:
        lhs = eval_sum(spec, order)
        rhs = eval_product(spec, order)
    except Exception as ex:  # engine errors become report status, not crashes
        return VerifyReport(
            name=spec.name,
            status="error",
            order=order,
            elapsed_ms=(time.perf_counter() - t0) * 1000,
            error="%s: %s" % (type(ex).__name__, ex),
        )
    d = lhs.first_difference(rhs, order)
    frac = [e for e in lhs.fractional_support() if e <= order]
    imag = sorted(
        set(e for e in lhs.imaginary_support() + rhs.imaginary_support() if e <= order)
    )
    report = VerifyReport(
        name=spec.name,
        status="match" if d is None and not frac and not imag else "mismatch",
        order=order,
        fractional_residue=frac,
        imaginary_residue=imag,
        elapsed_ms=(time.perf_counter() - t0) * 1000,
    )
    if d is not None:
        report.first_mismatch = (d, lhs.coeff(d), rhs.coeff(d))
    return report
