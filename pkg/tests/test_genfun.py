from fractions import Fraction

import pytest

from gfc.complex import AlgebraVariant
from gfc.genfun import (LaurentSeries, PerchikFactor, SeriesBudgetExceeded, _constant_term_dense,
                        _constant_term_sparse, _p_minus_one, complex_euler_series,
                        perchik_full_series, perchik_series, stabilization_report)

HAM0_26 = {0: 1, 2: 1, 10: -1, 12: 1, 14: -1, 16: -1, 18: 1, 24: -3, 26: 2}
HAM_32 = {-2: 1, 0: 2, 8: -1, 14: -1, 22: -1, 28: -1, 30: 1, 32: -1}


def test_ham0_series_to_t26():
    s = perchik_series(1, 26)
    assert s.coefficients == HAM0_26
    assert s.to_text() == "1 + t^2 - t^10 + t^12 - t^14 - t^16 + t^18 - 3*t^24 + 2*t^26"


def test_full_series_to_t32():
    s = perchik_full_series(1, 32)
    assert s.coefficients == HAM_32
    assert s.to_text() == "t^-2 + 2 - t^8 - t^14 - t^22 - t^28 + t^30 - t^32"


def test_trivial_truncation():
    assert perchik_series(1, 0).to_text() == "1"


@pytest.mark.parametrize("W", [0, 4, 10, 12])
def test_product_equals_complex_side_ham0(W):
    assert perchik_series(1, W) == complex_euler_series(AlgebraVariant.HAM0, W)


def test_full_product_equals_complex_side_ham():
    assert perchik_full_series(1, 8) == complex_euler_series(AlgebraVariant.HAM, 8)


def test_full_series_is_truncated_product_times_p_minus_one():
    # expanding p_{-1} against the ham0 product gives the full series:
    # for n = 1, p_{-1} = (1 - t^{-1} x)(1 - t^{-1} x^{-1}) and the
    # constant-term extraction does not factor, so compare against the
    # sparse expansion with the extra factor rather than a series product
    W = 12
    dense = _constant_term_dense(1, W, _p_minus_one(1).terms)
    sparse = _constant_term_sparse(1, W, _p_minus_one(1).terms)
    assert dense == sparse
    assert {e: Fraction(c, 2) for e, c in dense.items()} == perchik_full_series(1, W).coefficients


@pytest.mark.parametrize("n,W", [(1, 16), (2, 6), (3, 2)])
def test_dense_and_sparse_expansions_agree(n, W):
    assert _constant_term_dense(n, W) == _constant_term_sparse(n, W)


def test_n2_series_integral_and_starts_at_one():
    s = perchik_series(2, 8)
    assert s.is_integral()
    assert s[0] == 1
    assert s.to_text() == "1 + t^2 + 2*t^4"


def test_perchik_factor_shapes():
    # p_0(1): |a+b| = 2, a != b gives x^2, x^-2 only
    assert sorted(v for _, v in PerchikFactor.build(1, 0).terms) == [(-2,), (2,)]
    # p_1(1): a+b = 3 with a, b in N: four pairs
    f = PerchikFactor.build(1, 1)
    assert len(f) == 4 and all(te == 1 for te, _ in f.terms)
    # a = b is allowed for k >= 1: p_2(1) contains the pair (2, 2)
    assert (2, (0,)) in PerchikFactor.build(1, 2).terms


def test_budget():
    with pytest.raises(SeriesBudgetExceeded):
        _constant_term_dense(3, 30, cell_cap=1000)


def test_bad_arguments():
    with pytest.raises(ValueError):
        perchik_series(0, 4)
    with pytest.raises(ValueError):
        perchik_full_series(1, -3)


def test_laurent_series_arithmetic():
    a = LaurentSeries({0: 1, 1: 1}, 5)
    b = LaurentSeries({0: 1, 1: -1}, 3)
    assert (a * b).coefficients == {0: 1, 2: -1}
    assert (a * b).truncation == 3
    with pytest.raises(KeyError):
        b[4]
    assert LaurentSeries({2: Fraction(-3, 2), 0: 0}, 4).to_text() == "-3/2*t^2"
    doc = a.to_json()
    assert doc == {"variable": "t", "truncation": 5,
                   "coefficients": [{"exp": 0, "value": "1"}, {"exp": 1, "value": "1"}]}


def test_stabilization_report_flags():
    rep = stabilization_report(2, 6)
    rows = {r["exp"]: r for r in rep["rows"]}
    assert rows[2]["values"] == [1, 1] and rows[2]["stable"]
    assert rows[4]["values"] == [0, 2] and not rows[4]["stable"]
    assert rows[4]["c_t"] == 2
