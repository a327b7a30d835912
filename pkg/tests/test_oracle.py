import random
from fractions import Fraction as F

import pytest
from qrr import corpus
from qrr.gaussian import GaussianInt
from qrr.identity import eval_product, eval_sum
from qrr.oracle import PartSpec, dense_mul, partition_count, unpruned_sum
from qrr.series import QSeries


def test_partition_count_examples():
    spec = corpus.load("rogers_mod5_1_4")
    ps = PartSpec.from_product(spec.product, 20)
    assert partition_count(ps, 0) == 1
    assert partition_count(ps, 4) == 2  # 4 and 1+1+1+1
    spec = corpus.load("double_mod10_2_8")
    ps = PartSpec.from_product(spec.product, 20)
    assert partition_count(ps, 0) == 1
    assert partition_count(ps, 2) == 1  # only {2}
    assert partition_count(ps, 3) == 0


def test_partition_counts_match_products():
    for name in (
        "rogers_mod5_1_4",
        "rogers_mod5_2_3",
        "double_mod10_2_8",
        "double_mod10_4_6",
        "andrews_uncu_mod6",
    ):
        spec = corpus.load(name)
        ps = PartSpec.from_product(spec.product, 40)
        counts = ps.counts(40)
        prod = eval_product(spec, 40)
        for n in range(41):
            c = prod.coeff(n)
            assert c.im == 0 and c.re == counts[n], (name, n)


def test_signed_product_has_no_partition_reading():
    spec = corpus.load("rogers_mod4_1_4")  # contains 1/(-q^2;q^2)_inf
    with pytest.raises(ValueError):
        PartSpec.from_product(spec.product, 10)


def test_dense_mul_basics():
    assert dense_mul([1, 1], [1, -1]) == [1, 0, -1]
    x = [3, 1, 4, 1, 5]
    assert dense_mul(x, [1]) == x
    assert dense_mul([], x) == []


def test_dense_mul_matches_kernel_mul():
    rng = random.Random(7)
    for _ in range(20):
        n = 50
        da = {k: GaussianInt(rng.randint(-5, 5), rng.randint(-5, 5)) for k in range(n)}
        db = {k: GaussianInt(rng.randint(-5, 5), rng.randint(-5, 5)) for k in range(n)}
        a = QSeries(1, n - 1, da)
        b = QSeries(1, n - 1, db)
        fast = a.mul(b)
        la = [da.get(k, GaussianInt(0, 0)) for k in range(n)]
        lb = [db.get(k, GaussianInt(0, 0)) for k in range(n)]
        slow = dense_mul(la, lb)
        for k in range(n):
            assert fast.coeff(k) == slow[k]


def test_unpruned_sum_agrees_with_engine():
    rr = corpus.load("rogers_mod5_1_4")
    assert unpruned_sum(rr, [30], 50).same_through(eval_sum(rr, 50), F(50))
    d = corpus.load("double_mod5_1_4")
    assert unpruned_sum(d, [14, 14], 30).same_through(eval_sum(d, 30), F(30))


def test_unpruned_sum_detects_short_box():
    rr = corpus.load("rogers_mod5_1_4")
    small = unpruned_sum(rr, [2], 50)
    diff = small.first_difference(eval_sum(rr, 50), F(50))
    assert diff == 9  # first missing contribution is the n=3 term q^9


def test_unpruned_sum_quarter_grid():
    spec = corpus.load("double_mod10_2_8")
    assert unpruned_sum(spec, [10, 10], 20).same_through(eval_sum(spec, 20), F(20))
