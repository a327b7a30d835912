"""Recursive-descent parser for the identity file language.

Grammar (whitespace-insensitive, '#' starts a comment to end of line):

    file      := header? identity+
    header    := "corpus" STRING ";"
    identity  := "identity" STRING "{" "den" INT ";" sumside productside "}"
    sumside   := "sum" "{" "indices" IDENT ("," IDENT)* ";"
                 ("sign" signexpr ";")?
                 "exponent" polyexpr ";"
                 "denoms" denom ("," denom)* ";"
                 ("bounds" INT ("," INT)* ";")? "}"
    denom     := "(" monomial ";" IDENT ")"
    productside := "product" "{" factor ("*" factor)* "}"
    factor    := ("1/")? "poch" "(" monomial "," monomial ("," INT)? ")"
    signexpr  := atom ("*" atom)*
    atom      := "(-1)^" sexp | "i^" sexp
    sexp      := "binom(" linform ",2)" | "(" linform ")" | linterm
    monomial  := ("-")? ("i" "*"?)? "q" ("^" rational)?
    polyexpr  := rational-coefficient polynomial in the indices built from
                 '+', '-', '*', '^2', parentheses and binom(linform, 2)

The imaginary-unit atom "i^..." takes precedence over an index named i, so
identities that use an i^ sign atom should not name an index "i".
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import ParseError, SemanticError
from .gaussian import I, MINUS_I, MINUS_ONE, ONE
from .identity import ExponentPoly, IdentitySpec, LinForm, ProductFactor, SignAtom
from .series import Monomial

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+|\#[^\n]*)
      | (?P<string>"[^"\n]*")
      | (?P<int>\d+)
      | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<punct>[{}();,*+\-^/])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return "%s(%r)" % (self.kind, self.text)


def _tokenize(text: str) -> List[_Token]:
    out = []
    pos = 0
    line = 1
    col = 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            out.append(_Token(kind, tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    out.append(_Token("eof", "", line, col))
    return out


class _Poly:
    """Work-in-progress polynomial: {monomial key tuple: Fraction}.

    Keys are sorted tuples of index names with repetition, length <= 2.
    """

    def __init__(self, terms=None):
        self.terms: Dict[tuple, Fraction] = dict(terms or {})

    @classmethod
    def const(cls, c) -> "_Poly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "_Poly":
        return cls({(name,): Fraction(1)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return _Poly({k: v for k, v in out.items() if v})

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c) -> "_Poly":
        c = Fraction(c)
        return _Poly({k: v * c for k, v in self.terms.items() if v * c})

    def __mul__(self, other):
        out: Dict[tuple, Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = tuple(sorted(k1 + k2))
                if len(key) > 2:
                    raise SemanticError("exponent polynomial exceeds degree 2")
                out[key] = out.get(key, Fraction(0)) + v1 * v2
        return _Poly({k: v for k, v in out.items() if v})

    def to_exponent(self) -> ExponentPoly:
        quad = {}
        lin = {}
        const = Fraction(0)
        for k, v in self.terms.items():
            if len(k) == 2:
                quad[k] = v
            elif len(k) == 1:
                lin[k[0]] = v
            else:
                const = v
        return ExponentPoly.make(quad, lin, const)

    def names(self):
        out = set()
        for k in self.terms:
            out.update(k)
        return out


def _binom_poly(form: LinForm) -> _Poly:
    """binom(L, 2) = (L^2 - L)/2 expanded as a quadratic polynomial."""
    lin = _Poly({(x,): Fraction(c) for x, c in form.coeffs})
    lin = lin + _Poly.const(form.const)
    return (lin * lin - lin).scaled(Fraction(1, 2))


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self, ahead=0) -> _Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, msg, expected=()):
        t = self.peek()
        raise ParseError("%s, got %r" % (msg, t.text or "end of file"), t.line, t.col, expected)

    def expect(self, text) -> _Token:
        t = self.peek()
        if t.text != text:
            self.error("expected %r" % text, (text,))
        return self.next()

    def accept(self, text) -> bool:
        if self.peek().text == text:
            self.next()
            return True
        return False

    def expect_int(self) -> int:
        t = self.peek()
        if t.kind != "int":
            self.error("expected integer", ("INT",))
        self.next()
        return int(t.text)

    def expect_ident(self) -> str:
        t = self.peek()
        if t.kind != "ident":
            self.error("expected identifier", ("IDENT",))
        self.next()
        return t.text

    def expect_string(self) -> str:
        t = self.peek()
        if t.kind != "string":
            self.error("expected quoted string", ("STRING",))
        self.next()
        return t.text[1:-1]

    # -- grammar -----------------------------------------------------------

    def parse_file(self) -> List[IdentitySpec]:
        if self.peek().text == "corpus":
            self.next()
            self.expect_string()
            self.expect(";")
        specs = []
        while self.peek().text == "identity":
            specs.append(self.parse_identity())
        if self.peek().kind != "eof":
            self.error("expected 'identity'", ("identity",))
        if not specs:
            self.error("expected at least one identity", ("identity",))
        return specs

    def parse_identity(self) -> IdentitySpec:
        self.expect("identity")
        name = self.expect_string()
        self.expect("{")
        self.expect("den")
        den = self.expect_int()
        self.expect(";")
        indices, sign, poly, denoms, bounds = self.parse_sumside()
        product = self.parse_productside()
        self.expect("}")
        return IdentitySpec(
            name=name,
            den=den,
            indices=tuple(indices),
            sign=tuple(sign),
            exponent=poly.to_exponent(),
            denoms=tuple(denoms),
            product=tuple(product),
            bounds=tuple(bounds) if bounds is not None else None,
        )

    def parse_sumside(self):
        self.expect("sum")
        self.expect("{")
        self.expect("indices")
        indices = [self.expect_ident()]
        while self.accept(","):
            indices.append(self.expect_ident())
        if "q" in indices:
            raise SemanticError("index name 'q' is reserved")
        self.expect(";")
        sign = []
        if self.accept("sign"):
            sign = self.parse_signexpr()
            self.expect(";")
        self.expect("exponent")
        poly = self.parse_polyexpr()
        self.expect(";")
        self.expect("denoms")
        denoms = [self.parse_denom()]
        while self.accept(","):
            denoms.append(self.parse_denom())
        self.expect(";")
        bounds = None
        if self.accept("bounds"):
            bounds = [self.expect_int()]
            while self.accept(","):
                bounds.append(self.expect_int())
            self.expect(";")
        self.expect("}")
        return indices, sign, poly, denoms, bounds

    def parse_denom(self) -> Tuple[str, Monomial]:
        self.expect("(")
        base = self.parse_monomial()
        self.expect(";")
        idx = self.expect_ident()
        self.expect(")")
        return idx, base

    def parse_productside(self) -> List[ProductFactor]:
        self.expect("product")
        self.expect("{")
        factors = [self.parse_factor()]
        while self.accept("*"):
            factors.append(self.parse_factor())
        self.expect("}")
        return factors

    def parse_factor(self) -> ProductFactor:
        power = 1
        if self.peek().text == "1" and self.peek(1).text == "/":
            self.next()
            self.next()
            power = -1
        self.expect("poch")
        self.expect("(")
        x = self.parse_monomial()
        self.expect(",")
        base = self.parse_monomial()
        finite = None
        if self.accept(","):
            finite = self.expect_int()
        self.expect(")")
        return ProductFactor(x=x, base=base, power=power, finite=finite)

    def parse_monomial(self) -> Monomial:
        neg = self.accept("-")
        imag = False
        if self.peek().text == "i":
            self.next()
            self.accept("*")
            imag = True
        self.expect("q")
        exp = Fraction(1)
        if self.accept("^"):
            exp = self.parse_rational()
        unit = {(False, False): ONE, (True, False): MINUS_ONE,
                (False, True): I, (True, True): MINUS_I}[(neg, imag)]
        return Monomial(unit, exp)

    def parse_rational(self) -> Fraction:
        neg = self.accept("-")
        num = self.expect_int()
        den = 1
        if self.accept("/"):
            den = self.expect_int()
            if den == 0:
                self.error("zero denominator")
        val = Fraction(num, den)
        return -val if neg else val

    # sign expressions

    def parse_signexpr(self) -> List[SignAtom]:
        atoms = [self.parse_sign_atom()]
        while self.accept("*"):
            atoms.append(self.parse_sign_atom())
        return atoms

    def parse_sign_atom(self) -> SignAtom:
        if self.peek().text == "(" and self.peek(1).text == "-" and self.peek(2).text == "1":
            self.next()
            self.next()
            self.next()
            self.expect(")")
            self.expect("^")
            kind, form = self.parse_sign_exponent(allow_binom=True)
            return SignAtom("neg1_binom" if kind == "binom" else "neg1", form)
        if self.peek().text == "i":
            self.next()
            self.expect("^")
            kind, form = self.parse_sign_exponent(allow_binom=False)
            return SignAtom("i", form)
        self.error("expected sign atom '(-1)^...' or 'i^...'", ("(-1)^", "i^"))

    def parse_sign_exponent(self, allow_binom: bool):
        if self.peek().text == "binom":
            if not allow_binom:
                self.error("binom exponent only allowed after (-1)^")
            self.next()
            self.expect("(")
            form = self.parse_linform()
            self.expect(",")
            if self.expect_int() != 2:
                self.error("only binom(..., 2) is supported")
            self.expect(")")
            return "binom", form
        if self.accept("("):
            form = self.parse_linform()
            self.expect(")")
            return "plain", form
        return "plain", self.parse_linterm_form()

    def parse_linform(self) -> LinForm:
        coeffs: Dict[str, int] = {}
        const = 0
        sign = -1 if self.accept("-") else 1
        coeffs, const = self._lin_accumulate(coeffs, const, sign)
        while self.peek().text in ("+", "-"):
            sign = 1 if self.next().text == "+" else -1
            coeffs, const = self._lin_accumulate(coeffs, const, sign)
        return LinForm.make(coeffs, const)

    def _lin_accumulate(self, coeffs, const, sign):
        t = self.peek()
        if t.kind == "int":
            self.next()
            c = sign * int(t.text)
            if self.accept("*"):
                x = self.expect_ident()
                coeffs[x] = coeffs.get(x, 0) + c
            else:
                const += c
        elif t.kind == "ident":
            self.next()
            coeffs[t.text] = coeffs.get(t.text, 0) + sign
        else:
            self.error("expected linear term", ("INT", "IDENT"))
        return coeffs, const

    def parse_linterm_form(self) -> LinForm:
        coeffs: Dict[str, int] = {}
        const = 0
        coeffs, const = self._lin_accumulate(coeffs, const, 1)
        return LinForm.make(coeffs, const)

    # exponent polynomials

    def parse_polyexpr(self) -> _Poly:
        p = self.parse_polyterm(negate=self.accept("-"))
        while self.peek().text in ("+", "-"):
            op = self.next().text
            q = self.parse_polyterm(negate=(op == "-"))
            p = p + q
        return p

    def parse_polyterm(self, negate: bool) -> _Poly:
        p = self.parse_polyfactor()
        while self.accept("*"):
            p = p * self.parse_polyfactor()
        return p.scaled(-1) if negate else p

    def parse_polyfactor(self) -> _Poly:
        t = self.peek()
        if t.kind == "int":
            p = _Poly.const(self.parse_rational())
        elif t.text == "binom":
            self.next()
            self.expect("(")
            form = self.parse_linform()
            self.expect(",")
            if self.expect_int() != 2:
                self.error("only binom(..., 2) is supported")
            self.expect(")")
            p = _binom_poly(form)
        elif t.text == "(":
            self.next()
            p = self.parse_polyexpr()
            self.expect(")")
        elif t.kind == "ident":
            self.next()
            p = _Poly.var(t.text)
        else:
            self.error("expected polynomial factor", ("INT", "IDENT", "binom", "("))
        if self.accept("^"):
            k = self.expect_int()
            if k == 1:
                pass
            elif k == 2:
                p = p * p
            else:
                self.error("only powers 1 and 2 are supported in exponents")
        return p


def parse_file(text: str) -> List[IdentitySpec]:
    """Parse a corpus file into its identity specs."""
    return _Parser(text).parse_file()


def parse(text: str) -> IdentitySpec:
    """Parse a file containing exactly one identity."""
    specs = parse_file(text)
    if len(specs) != 1:
        raise SemanticError("expected exactly one identity, found %d" % len(specs))
    return specs[0]


def parse_poly(text: str) -> ExponentPoly:
    """Parse a standalone exponent polynomial (test/replay helper)."""
    p = _Parser(text)
    poly = p.parse_polyexpr()
    if p.peek().kind != "eof":
        p.error("trailing input after polynomial")
    return poly.to_exponent()
