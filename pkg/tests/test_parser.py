from fractions import Fraction as F

import pytest
from qrr.errors import ParseError, SemanticError
from qrr.gaussian import MINUS_ONE, ONE
from qrr.parser import parse, parse_file, parse_poly

GOOD = """
# a comment
identity "demo" {
  den 1;
  sum {
    indices n;
    exponent n^2;
    denoms (q; n);
  }
  product { 1/poch(q, q^5) * 1/poch(q^4, q^5) }
}
"""


def test_parse_single_identity():
    spec = parse(GOOD)
    assert spec.name == "demo"
    assert spec.indices == ("n",)
    assert spec.den == 1
    assert len(spec.product) == 2
    assert all(f.power == -1 for f in spec.product)


def test_parse_file_header_and_multiple():
    text = 'corpus "demo set";\n' + GOOD + GOOD.replace('"demo"', '"demo2"')
    specs = parse_file(text)
    assert [s.name for s in specs] == ["demo", "demo2"]


def test_parse_double_sum_with_signs():
    text = """
    identity "d" {
      den 4;
      sum {
        indices m, n;
        sign (-1)^binom(n-m,2);
        exponent 3/4*m^2 + 1/2*m*n + 3/4*n^2;
        denoms (q; m), (q; n);
      }
      product { 1/poch(q^2, q^10) }
    }
    """
    spec = parse(text)
    assert spec.sign[0].kind == "neg1_binom"
    assert dict(spec.sign[0].form.coeffs) == {"n": 1, "m": -1}
    point = {"m": 2, "n": 1}
    assert spec.exponent.eval(point) == F(3, 4) * 4 + F(1, 2) * 2 + F(3, 4)


def test_parse_i_power_sign():
    text = """
    identity "d" {
      den 4;
      sum {
        indices m, n;
        sign i^(n-m);
        exponent 1/4*m^2 + 1/2*m*n + 1/4*n^2;
        denoms (q^2; m), (q^2; n);
      }
      product { 1/poch(q, q^5) }
    }
    """
    spec = parse(text)
    assert spec.sign[0].kind == "i"


def test_parse_finite_poch_and_bounds():
    text = """
    identity "cw" {
      den 1;
      sum {
        indices i, j;
        sign (-1)^(i+j);
        exponent binom(i,2) + i*j + j^2;
        denoms (q; i), (q^2; j);
        bounds 5, 6;
      }
      product { poch(q^2, q) * 1/poch(-q^6, q^6) }
    }
    """
    spec = parse(text)
    assert spec.bounds == (5, 6)
    assert spec.product[0].power == 1
    assert spec.product[1].x.unit == MINUS_ONE


def test_parse_negative_monomial_argument():
    text = GOOD.replace("1/poch(q, q^5)", "1/poch(-q^2, q^2)")
    spec = parse(text)
    assert spec.product[0].x.unit == MINUS_ONE
    assert spec.product[0].x.exp == 2


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as ei:
        parse('identity "x" { den 1; sum { indices n; exponent n^3; } }')
    # cubic exponents are rejected (degree cap) or the parse fails cleanly
    assert ei.value.line >= 1


@pytest.mark.parametrize(
    "mutation",
    [
        ('den 1;', 'den 0;'),  # nonpositive denominator
        ('denoms (q; n);', 'denoms (q; m);'),  # unbound index
        ('denoms (q; n);', ''),  # missing denominator
        ('exponent n^2;', 'exponent m*n;'),  # unbound name in exponent
        ('indices n;', 'indices n, n;'),  # duplicate index
    ],
)
def test_semantic_errors(mutation):
    old, new = mutation
    with pytest.raises((SemanticError, ParseError)):
        parse(GOOD.replace(old, new))


def test_reject_index_named_q():
    with pytest.raises((ParseError, SemanticError)):
        parse(GOOD.replace("indices n;", "indices q;").replace("(q; n)", "(q; q)").replace("n^2", "q^2"))


def test_degree_cap():
    with pytest.raises((ParseError, SemanticError)):
        parse(GOOD.replace("exponent n^2;", "exponent n*n*n;"))


def test_unbalanced_rejected():
    with pytest.raises(ParseError):
        parse(GOOD.replace("}", "", 1))


def test_parse_poly_binom_expansion():
    p = parse_poly("binom(m+n,2)")
    assert p.eval({"m": 3, "n": 2}) == 10
    q = parse_poly("1/2*(m+n)*(m+n) - 1/2*m - 1/2*n")
    assert p == q


def test_parse_poly_rejects_trailing():
    with pytest.raises(ParseError):
        parse_poly("n^2 n")


def test_exponent_matrix_view():
    p = parse_poly("3/4*m^2 + 1/2*m*n + 3/4*n^2")
    mat = p.quadratic_matrix(["m", "n"])
    assert mat == [[F(3, 2), F(1, 2)], [F(1, 2), F(3, 2)]]
    assert p.linear_vector(["m", "n"]) == [F(0), F(0)]
