"""Evaluation, flip, bilinear equations, and rank profiles of linear-form matrices."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bggkit.bggcore import bgg_complex
from bggkit.examples import koszul_module
from bggkit.linforms import (
    LinFormMatrix,
    bilinear_equations,
    eval_at,
    flip,
    generic_rank,
    rank_profile,
    sample_points,
    tensor_from_dict,
    tensor_to_dict,
)
from bggkit.ringkit import MatrixQ, rank


@st.composite
def tensors(draw, max_dim=4):
    a = draw(st.integers(min_value=1, max_value=max_dim))
    b = draw(st.integers(min_value=1, max_value=max_dim))
    q = draw(st.integers(min_value=1, max_value=max_dim))
    ent = st.integers(min_value=-4, max_value=4)
    T = draw(
        st.lists(
            st.lists(st.lists(ent, min_size=q, max_size=q), min_size=b, max_size=b),
            min_size=a,
            max_size=a,
        )
    )
    return LinFormMatrix.from_entries(T, q)


def x1x2_row():
    # the 1x2 matrix (x1  x2) in two variables
    return LinFormMatrix.from_entries([[[1, 0], [0, 1]]], 2)


def test_eval_examples():
    u = x1x2_row()
    assert eval_at(u, [0, 0]).is_zero()
    assert eval_at(u, [1, 0]) == MatrixQ.from_rows([[1, 0]])
    assert eval_at(u, [Fraction(1, 2), 3]) == MatrixQ.from_rows([[Fraction(1, 2), 3]])


def test_eval_length_mismatch():
    with pytest.raises(ValueError):
        eval_at(x1x2_row(), [1, 2, 3])


@settings(max_examples=60, deadline=None)
@given(tensors(), st.integers(min_value=-5, max_value=5))
def test_eval_homogeneous(u, s):
    rng = random.Random(11)
    v = [Fraction(rng.randint(-3, 3)) for _ in range(u.q)]
    scaled = eval_at(u, [s * x for x in v])
    base = eval_at(u, v)
    assert scaled == MatrixQ(base.rows, base.cols, tuple(s * e for e in base.entries))


def test_flip_examples():
    u = x1x2_row()
    w = flip(u)
    assert (w.a, w.b, w.q) == (1, 2, 2)
    assert w.T == u.T  # the identity pairing tensor is symmetric under the swap
    one = LinFormMatrix.from_entries([[[2, 3, 5]]], 3)
    f = flip(one)
    assert (f.a, f.b, f.q) == (1, 3, 1)
    assert f.T == (((Fraction(2),), (Fraction(3),), (Fraction(5),)),)


@settings(max_examples=100, deadline=None)
@given(tensors())
def test_flip_involution(u):
    assert flip(flip(u)) == u


@settings(max_examples=100, deadline=None)
@given(tensors())
def test_bilinear_equations_flip_invariant(u):
    assert bilinear_equations(u) == bilinear_equations(flip(u))


def test_bilinear_equations_examples():
    u = x1x2_row()
    assert bilinear_equations(u) == [(1, 0, 0, 1)]
    zero = LinFormMatrix.from_entries([[[0, 0]], [[0, 0]]], 2)
    assert bilinear_equations(zero) == [(0, 0), (0, 0)]


@settings(max_examples=60, deadline=None)
@given(tensors(max_dim=3))
def test_eval_commutes_with_flip(u):
    rng = random.Random(5)
    x = [Fraction(rng.randint(-3, 3)) for _ in range(u.q)]
    y = [Fraction(rng.randint(-3, 3)) for _ in range(u.b)]
    ux = eval_at(u, x)
    wy = eval_at(flip(u), y)
    lhs = [sum(ux.entry(r, c) * y[c] for c in range(u.b)) for r in range(u.a)]
    rhs = [sum(wy.entry(r, i) * x[i] for i in range(u.q)) for r in range(u.a)]
    assert lhs == rhs


def test_rank_profile_koszul_last_differential():
    c = bgg_complex(koszul_module(3))
    last = c.diffs[2]  # wedge into the top power; rank 1 away from the origin
    pts = sample_points(3, 12, seed=4)
    assert rank_profile(last, pts) == [1] * 12
    assert generic_rank(last) == 1


def test_rank_profile_detects_drop():
    # second row vanishes on the coordinate line x2 = 0
    u = LinFormMatrix.from_entries([[[1, 0], [0, 1]], [[0, 1], [0, 1]]], 2)
    ranks = rank_profile(u, [(1, 0), (0, 1), (2, 1)])
    assert ranks == [1, 2, 2]
    assert generic_rank(u) == 2


def test_rank_profile_errors():
    u = x1x2_row()
    with pytest.raises(ValueError):
        rank_profile(u, [])
    with pytest.raises(ValueError):
        rank_profile(u, [(0, 0)])
    with pytest.raises(ValueError):
        rank_profile(u, [(1,)])


@settings(max_examples=40, deadline=None)
@given(tensors(max_dim=3))
def test_generic_rank_bounds_samples(u):
    g = generic_rank(u)
    pts = sample_points(u.q, 6, seed=99)
    assert all(r <= g for r in rank_profile(u, pts))


def test_generic_rank_symbolic_cases():
    sym = LinFormMatrix.from_entries(
        [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], 2
    )  # det = x1^2 - x2^2, generically invertible
    assert generic_rank(sym) == 2
    rk1 = LinFormMatrix.from_entries([[[1, 0], [0, 1]], [[2, 0], [0, 2]]], 2)
    assert generic_rank(rk1) == 1
    assert rank(eval_at(rk1, (1, 5))) == 1


def test_tensor_serde_round_trip():
    u = LinFormMatrix.from_entries([[[Fraction(1, 2), 0], [3, -1]]], 2)
    assert tensor_from_dict(tensor_to_dict(u)) == u


def test_sample_points_deterministic_nonzero():
    a = sample_points(3, 10, seed=7)
    b = sample_points(3, 10, seed=7)
    assert a == b
    assert all(any(x != 0 for x in p) for p in a)
    assert sample_points(3, 10, seed=8) != a
