"""Series and matrix substrate tests, including the independent rank oracle."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bggkit.ringkit import (
    MatrixQ,
    TruncSeries,
    binom_power,
    format_rational,
    parse_rational,
    rank,
    series_inv,
    series_mul,
)
from oracles import gauss_rank

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def series(order):
    return st.lists(rationals, min_size=order + 1, max_size=order + 1).map(
        lambda cs: TruncSeries(order, tuple(cs))
    )


def test_series_mul_examples():
    one_plus = TruncSeries.make(2, [1, 1, 0])
    one_minus = TruncSeries.make(2, [1, -1, 0])
    assert series_mul(one_plus, one_minus).coeffs == (1, 0, -1)
    f = TruncSeries.make(3, [2, Fraction(1, 3), 0, -5])
    assert series_mul(f, TruncSeries.one(3)) == f
    a = TruncSeries.make(2, [1, 2, 4])
    b = TruncSeries.make(2, [1, -2, 0])
    assert series_mul(a, b).coeffs == (1, 0, 0)


def test_series_mul_order_mismatch():
    with pytest.raises(ValueError):
        series_mul(TruncSeries.one(2), TruncSeries.one(3))


def test_series_inv_examples():
    assert series_inv(TruncSeries.make(3, [1, -2])).coeffs == (1, 2, 4, 8)
    assert series_inv(TruncSeries.one(4)) == TruncSeries.one(4)
    sq = TruncSeries.make(2, [1, 2, 1])  # (1+t)^2
    assert series_inv(sq).coeffs == (1, -2, 3)


def test_series_inv_singular():
    with pytest.raises(ZeroDivisionError):
        series_inv(TruncSeries.make(2, [0, 1, 1]))


def test_binom_power_examples():
    assert binom_power(2, 1, 2).coeffs == (1, -2, 0)
    assert binom_power(1, -1, 3).coeffs == (1, 1, 1, 1)
    assert binom_power(3, -1, 3).coeffs == (1, 3, 9, 27)
    assert binom_power(2, 0, 3) == TruncSeries.one(3)


def test_binom_power_rejects_nonpositive_j():
    with pytest.raises(ValueError):
        binom_power(0, 2, 3)


@settings(max_examples=60, deadline=None)
@given(series(4), series(4))
def test_series_mul_commutative(a, b):
    assert series_mul(a, b) == series_mul(b, a)


@settings(max_examples=40, deadline=None)
@given(series(3), series(3), series(3))
def test_series_mul_associative(a, b, c):
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))


@settings(max_examples=60, deadline=None)
@given(series(5))
def test_series_inv_identity(a):
    if a.coeffs[0] == 0:
        with pytest.raises(ZeroDivisionError):
            series_inv(a)
        return
    assert series_mul(a, series_inv(a)) == TruncSeries.one(5)


def test_binom_power_exponent_additivity_grid():
    for j in range(1, 5):
        for e1 in range(-5, 6):
            for e2 in range(-5, 6):
                n = 8
                lhs = binom_power(j, e1 + e2, n)
                rhs = series_mul(binom_power(j, e1, n), binom_power(j, e2, n))
                assert lhs == rhs, (j, e1, e2)


def test_rank_examples():
    assert rank(MatrixQ.identity(2)) == 2
    assert rank(MatrixQ.zero(3, 4)) == 0
    assert rank(MatrixQ.from_rows([[1, 2], [2, 4]])) == 1


def test_rank_oracle_agreement():
    rng = random.Random(90125)
    for _ in range(250):
        nr = rng.randint(0, 8)
        nc = rng.randint(0, 8)
        rows = [
            [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(nc)]
            for _ in range(nr)
        ]
        m = MatrixQ.from_rows(rows) if nr else MatrixQ.zero(0, nc)
        assert rank(m) == gauss_rank(rows), rows


def test_rank_invariance_permutation_transpose():
    rng = random.Random(777)
    for _ in range(60):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(nc)] for _ in range(nr)]
        m = MatrixQ.from_rows(rows)
        r = rank(m)
        perm_rows = rows[:]
        rng.shuffle(perm_rows)
        cols = list(range(nc))
        rng.shuffle(cols)
        permuted = [[row[c] for c in cols] for row in perm_rows]
        assert rank(MatrixQ.from_rows(permuted)) == r
        assert rank(m.transpose()) == r


def test_rational_json_round_trip():
    for v in [Fraction(3, 4), Fraction(-7, 2), Fraction(5), Fraction(0)]:
        assert parse_rational(format_rational(v)) == v
    assert format_rational(Fraction(4, 2)) == 2
    assert format_rational(Fraction(1, 3)) == "1/3"
    with pytest.raises(ValueError):
        parse_rational(True)


def test_truncseries_validation():
    with pytest.raises(ValueError):
        TruncSeries(2, (Fraction(1),))
    with pytest.raises(ValueError):
        TruncSeries(-1, ())


def test_matrix_validation():
    with pytest.raises(ValueError):
        MatrixQ(2, 2, (Fraction(1),) * 3)
    with pytest.raises(ValueError):
        MatrixQ.from_rows([[1, 2], [3]])
