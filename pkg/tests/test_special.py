from fractions import Fraction as F

import pytest
from qrr.errors import NegativeExponent, NotPositiveDefinite
from qrr.gaussian import MINUS_ONE, ONE
from qrr.series import Monomial, QSeries, poch_finite, qmono
from qrr.special import (
    JtpReport,
    NahmData,
    gaussian_binomial,
    hypergeometric_sum,
    jtp_check,
    nahm_series,
    rogers_szego_bw,
    rogers_szego_def,
    rs_at,
)
from qrr.zseries import ZSeries, theta_z

MINUS_ONE_T = Monomial(MINUS_ONE, F(0))  # t := -1


def test_gaussian_binomial_values():
    q = qmono(1)
    assert gaussian_binomial(4, 0, q, 20) == QSeries.one(20)
    assert gaussian_binomial(4, 5, q, 20).is_zero()
    # [4 2]_q = 1 + q + 2q^2 + q^3 + q^4
    g = gaussian_binomial(4, 2, q, 20)
    assert [g.coeff(n).re for n in range(6)] == [1, 1, 2, 1, 1, 0]
    # symmetry [n k] = [n n-k]
    assert gaussian_binomial(7, 3, q, 30) == gaussian_binomial(7, 4, q, 30)


def test_gaussian_binomial_pascal():
    # [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q
    q = qmono(1)
    for n in range(1, 7):
        for k in range(1, n):
            lhs = gaussian_binomial(n, k, q, 40)
            rhs = gaussian_binomial(n - 1, k - 1, q, 40) + gaussian_binomial(
                n - 1, k, q, 40
            ).shift(k).truncate(40)
            assert lhs == rhs, (n, k)


def test_rogers_szego_representations_agree():
    q = qmono(1)
    for n in range(9):
        assert rogers_szego_def(n, q, 60).same_through(rogers_szego_bw(n, q, 60))


def test_rogers_szego_recurrence():
    # H_{n+1}(t) = (1+t) H_n(t) - (1 - q^n) t H_{n-1}(t)
    q = qmono(1)
    order = 60
    one = ZSeries.embed(QSeries.one(order))
    for n in range(1, 7):
        h_prev = rogers_szego_bw(n - 1, q, order)
        h_n = rogers_szego_bw(n, q, order)
        h_next = rogers_szego_bw(n + 1, q, order)
        t = one.zshift(1)
        factor = QSeries.one(order) - QSeries.term(ONE, n, order)
        rhs = (one + t) * h_n - t.scale_series(factor) * h_prev
        assert h_next.same_through(rhs), n


def test_rs_at_minus_one_closed_forms():
    q = qmono(1)
    for n in range(8):
        even = rs_at(2 * n, MINUS_ONE_T, q, 80)
        assert even.same_through(poch_finite(qmono(1), qmono(2), n, 80)), n
        assert rs_at(2 * n + 1, MINUS_ONE_T, q, 80).is_zero(), n


def test_jtp_check_passes():
    rep = jtp_check(60)
    assert isinstance(rep, JtpReport)
    assert rep.ok and rep.first_divergence is None


def test_jtp_negative_control():
    # flipping the theta sign must produce an early divergence
    from qrr.series import poch_infinite
    from qrr.zseries import euler_z_product

    order = F(20)
    q = qmono(1)
    half = Monomial(MINUS_ONE, F(1, 2))
    lhs = (
        euler_z_product(half, q, order, den=2)
        * euler_z_product(half, q, order, den=2).reflect()
        * ZSeries.embed(poch_infinite(q, q, order, den=2))
    )
    wrong = theta_z(1, F(1, 2), ONE, 1, order, den=2)  # sign +1 instead of -1
    d = lhs.first_difference(wrong, order)
    assert d is not None and d[1] <= 2


def test_nahm_rank1_matches_single_sum():
    data = NahmData(a=((F(2),),), b=(F(0),), c=F(0))
    s = nahm_series(data, 40)
    direct = hypergeometric_sum(lambda n: n * n, qmono(1), 40)
    assert s.same_through(direct, 40)


def test_nahm_half_integer_linear():
    data = NahmData(a=((F(1),),), b=(F(1, 2),), c=F(0))
    s = nahm_series(data, 20)
    # n(n+1)/2 is always integral, so the scaled denominator reduces to 1
    assert s.den in (1, 2)
    direct = hypergeometric_sum(lambda n: F(n * n, 2) + F(n, 2), qmono(1), 20)
    assert s.same_through(direct, 20)


def test_nahm_rank2():
    a = ((F(2), F(1)), (F(1), F(2)))
    data = NahmData(a=a, b=(F(0), F(0)), c=F(0))
    s = nahm_series(data, 15)
    assert s.coeff(0).re == 1
    assert s.coeff(1).re == 2  # lattice points (1,0) and (0,1)
    # cross-check fully against literal expansion
    from qrr.series import inv_poch_table

    table = inv_poch_table(qmono(1), 6, 15, 1)
    acc = QSeries.zero(15)
    for m in range(7):
        for n in range(7):
            e = m * m + m * n + n * n
            if e > 15:
                continue
            acc = acc + table[m].mul(table[n], bound=15 - e).shift(e).truncate(15)
    assert s.same_through(acc, 15)


def test_nahm_rejects_bad_matrices():
    with pytest.raises(NotPositiveDefinite):
        NahmData(a=((F(-1),),), b=(F(0),), c=F(0))
    with pytest.raises(NotPositiveDefinite):
        NahmData(a=((F(1), F(2)), (F(3), F(1))), b=(F(0), F(0)), c=F(0))


def test_nahm_negative_constant_is_an_error():
    data = NahmData(a=((F(2),),), b=(F(0),), c=F(-1, 60))
    with pytest.raises(NegativeExponent):
        nahm_series(data, 10)


def test_hypergeometric_sum_stops_correctly():
    s = hypergeometric_sum(lambda n: n * n + 2 * n, qmono(4), 30)
    assert s.coeff(0).re == 1 and s.coeff(3).re == 1  # n=1 term q^3/(q^4;q^4)_1
    assert s.coeff(8).re == 1  # n=2 gives q^8
