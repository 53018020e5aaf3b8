from __future__ import annotations

import random

import pytest
import sympy
from oracles import mutate_matrix_naive

from cluster_bongartz.errors import InputError, NotSkewSymmetrizableError, NotUnimodularError
from cluster_bongartz.matrix_core import (
    ExchangeMatrix,
    as_matrix,
    determinant,
    find_skew_symmetrizer,
    identity,
    is_skew_symmetrized_by,
    matmul,
    mutate_matrix,
    unimodular_inverse,
    vstack,
)

A2 = ((0, 1), (-1, 0))
MARKOV = ((0, 2, -2), (-2, 0, 2), (2, -2, 0))


def test_mutate_a2_stack_in_direction_2():
    out = mutate_matrix(vstack(A2, identity(2)), 2)
    assert out == ((0, -1), (1, 0), (1, 0), (0, -1))


@pytest.mark.parametrize("k", [1, 2])
def test_mutation_is_involution(k):
    a = vstack(A2, identity(2))
    assert mutate_matrix(mutate_matrix(a, k), k) == a


def test_markov_mutation_negates():
    assert mutate_matrix(MARKOV, 1) == tuple(tuple(-x for x in row) for row in MARKOV)


def test_mutation_matches_naive_formula():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 4)
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                x = rng.randint(-3, 3)
                b[i][j], b[j][i] = x, -x
        em = ExchangeMatrix.from_rows(b)
        k = rng.randint(1, n)
        assert [list(r) for r in em.mutate(k).B] == mutate_matrix_naive(b, k)


def test_mutate_rejects_bad_direction():
    with pytest.raises(InputError):
        mutate_matrix(A2, 3)
    with pytest.raises(InputError):
        mutate_matrix(A2, 0)


@pytest.mark.parametrize(
    "b, s",
    [(A2, (1, 1)), (((0, 1), (-2, 0)), (2, 1)), (((0, 1), (1, 0)), None), (((0,),), (1,))],
)
def test_find_skew_symmetrizer(b, s):
    assert find_skew_symmetrizer(b) == s


def test_skew_symmetrizer_on_disconnected_matrix():
    b = ((0, 1, 0, 0), (-2, 0, 0, 0), (0, 0, 0, 3), (0, 0, -1, 0))
    s = find_skew_symmetrizer(b)
    assert is_skew_symmetrized_by(b, s)
    assert s == (2, 1, 1, 3)


def test_exchange_matrix_validation():
    with pytest.raises(NotSkewSymmetrizableError):
        ExchangeMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(NotSkewSymmetrizableError):
        ExchangeMatrix.from_rows(A2, (2, 1))
    with pytest.raises(InputError):
        ExchangeMatrix.from_rows([[0, 1], [-1]])
    with pytest.raises(InputError):
        ExchangeMatrix.from_rows([[0, 1.5], [-1.5, 0]])
    with pytest.raises(InputError):
        ExchangeMatrix.from_rows([[1, 0], [0, 0]])


def test_as_matrix_accepts_integral_values_only():
    assert as_matrix([[1, 2], [3, 4]]) == ((1, 2), (3, 4))
    with pytest.raises(InputError):
        as_matrix([[True, 0]])


def test_skew_symmetrizer_preserved_by_mutation():
    em = ExchangeMatrix.from_rows([[0, 1, 0], [-2, 0, 1], [0, -1, 0]])
    for k in (1, 2, 3, 2, 1):
        em = em.mutate(k)
        assert is_skew_symmetrized_by(em.B, em.S)


def test_transpose_and_opposite():
    em = ExchangeMatrix.from_rows([[0, 1], [-2, 0]])
    assert em.transpose().B == ((0, -2), (1, 0))
    assert em.transpose().S == (1, 2)
    assert em.opposite().opposite() == em


@pytest.mark.parametrize(
    "a, inv",
    [
        (identity(2), identity(2)),
        (((1, 0), (0, -1)), ((1, 0), (0, -1))),
        (((1, 1), (0, 1)), ((1, -1), (0, 1))),
    ],
)
def test_unimodular_inverse(a, inv):
    assert unimodular_inverse(a) == inv
    assert matmul(a, inv) == identity(2)


def test_non_unimodular_inverse_fails():
    with pytest.raises(NotUnimodularError) as err:
        unimodular_inverse(((2, 0), (0, 1)))
    assert err.value.determinant == 2


def test_determinant_against_sympy():
    assert determinant(((1, 2), (3, 4))) == -2
    assert determinant(((2, 0, 1), (1, 3, 2), (1, 1, 1))) == 0
    assert determinant(()) == 1
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 5)
        a = tuple(tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(n))
        assert determinant(a) == sympy.Matrix(a).det()
