import itertools

import numpy as np
import pytest

from toricpoly.errors import FieldDivisionByZeroError, NotPrimePowerError
from toricpoly.gf import SUPPORTED_Q, field_make, in_row_space, rank, rref

QS = [2, 3, 4, 5, 7, 8, 9, 11, 13]


@pytest.mark.parametrize("q", QS)
def test_field_axioms(q):
    F = field_make(q)
    A, M = F.add_table.astype(int), F.mul_table.astype(int)
    e = np.arange(q)
    assert (A == A.T).all() and (M == M.T).all()
    assert (A[0] == e).all() and (M[1] == e).all() and (M[0] == 0).all()
    for a, b, c in itertools.product(range(q), repeat=3):
        assert A[A[a, b], c] == A[a, A[b, c]]
        assert M[M[a, b], c] == M[a, M[b, c]]
        assert M[a, A[b, c]] == A[M[a, b], M[a, c]]
    for a in range(q):
        assert A[a, F.neg(a)] == 0
        if a:
            assert M[a, F.inv(a)] == 1


@pytest.mark.parametrize("q", QS)
def test_primitive_element(q):
    F = field_make(q)
    assert F.order(F.epsilon) == q - 1
    powers = [F.eps_pow(i) for i in range(q - 1)]
    assert sorted(powers) == list(range(1, q))


def test_epsilon_choices():
    assert field_make(3).epsilon == 2
    assert field_make(7).epsilon == 3
    assert field_make(2).epsilon == 1


def test_not_prime_power():
    for q in (1, 6, 10, 12):
        with pytest.raises(NotPrimePowerError):
            field_make(q)
    assert 6 not in SUPPORTED_Q and 64 in SUPPORTED_Q


def test_division_by_zero():
    F = field_make(5)
    with pytest.raises(FieldDivisionByZeroError):
        F.inv(0)
    with pytest.raises(FieldDivisionByZeroError):
        F(3) / F(0)


def test_element_arithmetic():
    F = field_make(9)
    x = F(F.epsilon)
    assert x ** 8 == F.one
    assert (x + x) - x == x
    assert x * x.inverse() == 1
    assert -x + x == 0


def test_rref_and_rank():
    F = field_make(5)
    A = np.array([[1, 2, 3], [2, 4, 1], [3, 1, 4]])
    R, piv = rref(F, A)
    assert rank(F, A) == len(piv)
    assert in_row_space(F, A, np.array([3, 1, 4]))
    B = np.array([[1, 1, 0], [2, 2, 0]])
    assert rank(F, B) == 1
    assert not in_row_space(F, B, np.array([0, 0, 1]))
