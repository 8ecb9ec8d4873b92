from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from polyrecon.errors import InconsistentDeckError, RankDeficientError
from polyrecon.linalg import determinant, f2_relation, rank_f2, rank_q, solve

small_ints = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 5).flatmap(square))
def test_determinant_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m).det()


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                                    min_size=1, max_size=6)))
def test_rank_matches_sympy(m):
    assert rank_q(m) == sympy.Matrix(m).rank()


def test_determinant_of_rationals():
    assert determinant([[Fraction(1, 2), 1], [1, 4]]) == 1
    assert determinant([]) == 1


def test_solve():
    assert solve([[2, 1], [1, 3], [3, 4]], [3, 4, 7]) == [1, 1]
    with pytest.raises(InconsistentDeckError):
        solve([[2, 1], [1, 3], [3, 4]], [3, 4, 8])
    with pytest.raises(RankDeficientError):
        solve([[1, 2], [2, 4]], [1, 2])


def test_f2_rank_and_relation():
    cols = [[1, 1, 1, 1], [1, 0, 0, 1], [0, 1, 1, 0], [1, 1, 1, 1]]
    assert rank_f2(cols) == 2
    rel = f2_relation(cols)
    assert rel == [1, 1, 1]
    assert f2_relation([[1, 0], [0, 1]]) is None


@given(st.lists(st.lists(st.integers(0, 1), min_size=5, max_size=5), min_size=1, max_size=7))
def test_f2_relation_is_a_relation(cols):
    rel = f2_relation(cols)
    if rel is None:
        assert rank_f2(cols) == len(cols)
        return
    r = len(rel) - 1
    assert rel[r] == 1
    assert rank_f2(cols[:r]) == r
    acc = [sum(rel[k] * cols[k][i] for k in range(r + 1)) % 2 for i in range(5)]
    assert acc == [0] * 5
