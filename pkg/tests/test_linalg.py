import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from excy.errors import SingularMatrixError
from excy.linalg import (determinant, loop_adjugate, loop_inverse, loop_matrix, matmul,
                         rational_inverse_oracle, transpose)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def test_loop_inverse_size_three():
    inv = loop_inverse((2, 2, 2))
    expected = [[4, -2, 1], [1, 4, -2], [-2, 1, 4]]
    assert inv == tuple(tuple(Fraction(x, 9) for x in row) for row in expected)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=6).flatmap(
    lambda h: st.lists(st.integers(min_value=1, max_value=50), min_size=2 * h + 1, max_size=2 * h + 1)))
def test_loop_closed_form_matches_elimination(e):
    m = loop_matrix(e)
    assert loop_inverse(e) == rational_inverse_oracle(m)
    det, _ = loop_adjugate(e)
    assert determinant(m) == det


def test_even_loops_rejected():
    with pytest.raises(ValueError):
        loop_adjugate((2, 3))
    with pytest.raises(ValueError):
        loop_adjugate((2, 3, 4, 5))


def test_oracle_inverts_random_matrices():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 7)
        m = tuple(tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(n))
        if determinant(m) == 0:
            with pytest.raises(SingularMatrixError):
                rational_inverse_oracle(m)
            continue
        inv = rational_inverse_oracle(m)
        assert matmul(m, inv) == identity(n)


def test_determinant_small_cases():
    assert determinant(((3,),)) == 3
    assert determinant(((0, 1), (1, 0))) == -1
    assert determinant(((1, 2), (2, 4))) == 0
    assert determinant(((2, 0, 1), (0, 3, 1), (1, 0, 5))) == 27


def test_transpose():
    assert transpose(((1, 2), (3, 4))) == ((1, 3), (2, 4))


def test_non_square_rejected():
    with pytest.raises(ValueError):
        determinant(((1, 2),))
