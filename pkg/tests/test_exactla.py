"""Unit tests for exact linear algebra.

Oracles: naive Leibniz determinant expansion local to this file, direct
matrix-vector products over Fraction, and invariance of canonical
results under row mixing.
"""

import itertools
import random
from fractions import Fraction

import pytest

from oscform.errors import AmbientMismatch, ShapeMismatch
from oscform.exactla import (
    ExactMatrix,
    FunctionField,
    RationalField,
    Subspace,
    determinant,
    kernel_basis,
    rank,
    row_space,
    rref,
    span_contains,
)
from oscform.polyring import Polynomial, RationalFunction, parse_rational


def random_matrix(rng, nrows, ncols):
    return ExactMatrix(
        [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(ncols)]
         for _ in range(nrows)],
        field=RationalField(),
    )


def naive_determinant(m: ExactMatrix) -> Fraction:
    n = m.nrows
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        product = Fraction(sign)
        for i in range(n):
            product *= m[i, perm[i]]
        total += product
    return total


def matvec(m: ExactMatrix, v):
    return [sum((row[j] * v[j] for j in range(m.ncols)), Fraction(0))
            for row in m.rows]


def test_matrix_shape_validation():
    with pytest.raises(ShapeMismatch):
        ExactMatrix([[1, 2], [3]])
    with pytest.raises(ShapeMismatch):
        ExactMatrix([[1, 2]], ncols=3)
    empty = ExactMatrix([], ncols=4)
    assert empty.nrows == 0 and empty.ncols == 4
    assert rank(empty) == 0


def test_transpose_and_stack():
    m = ExactMatrix([[1, 2, 3], [4, 5, 6]])
    t = m.transpose()
    assert t.nrows == 3 and t.ncols == 2
    assert t[2, 1] == 6
    s = m.stack(ExactMatrix([[7, 8, 9]]))
    assert s.nrows == 3 and s.row(2) == (7, 8, 9)


def test_rank_nullity_on_random_matrices():
    rng = random.Random(101)
    for _ in range(40):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert rank(m) + kernel_basis(m).dim == m.ncols


def test_kernel_vectors_annihilate():
    rng = random.Random(103)
    for _ in range(25):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(2, 5))
        for v in kernel_basis(m).basis:
            assert all(entry == 0 for entry in matvec(m, list(v)))


def test_rref_shape_and_idempotence():
    rng = random.Random(107)
    for _ in range(20):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        reduced = rref(m)
        again = rref(reduced.matrix)
        assert again.matrix == reduced.matrix
        assert again.rank == reduced.rank
        # Pivots are 1 with zeros elsewhere in their column.
        for k, pc in enumerate(reduced.pivot_columns):
            col = reduced.matrix.column(pc)
            assert col[k] == 1
            assert all(not col[i] for i in range(m.nrows) if i != k)


def test_rank_invariant_under_row_scaling():
    rng = random.Random(109)
    for _ in range(15):
        m = random_matrix(rng, 3, 4)
        scaled = ExactMatrix(
            [[e * Fraction(rng.randint(1, 9)) for e in row] for row in m.rows])
        assert rank(m) == rank(scaled)


def test_determinant_matches_leibniz_expansion():
    rng = random.Random(113)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = random_matrix(rng, n, n)
        assert determinant(m) == naive_determinant(m)


def test_determinant_of_singular_matrix_is_zero():
    m = ExactMatrix([[1, 2], [2, 4]])
    assert determinant(m) == 0
    with pytest.raises(ShapeMismatch):
        determinant(ExactMatrix([[1, 2, 3], [4, 5, 6]]))


def test_function_field_ranks():
    t = ("t",)
    one = parse_rational("1", t)
    tt = parse_rational("t", t)
    m = ExactMatrix([[one, tt], [tt, tt * tt]], field=FunctionField(t))
    assert rank(m) == 1
    m2 = ExactMatrix([[one, tt], [0, one]], field=FunctionField(t))
    assert rank(m2) == 2


def test_function_field_determinant():
    t = ("t",)
    field = FunctionField(t)
    tt = parse_rational("t", t)
    m = ExactMatrix([[tt + 1, tt], [tt, tt + 1]], field=field)
    assert determinant(m) == parse_rational("2*t + 1", t)


def test_function_field_kernel_annihilates():
    names = ("x", "y")
    field = FunctionField(names)
    x = parse_rational("x", names)
    y = parse_rational("y", names)
    m = ExactMatrix([[x, y, x + y]], field=field)
    kernel = kernel_basis(m)
    assert kernel.dim == 2
    for v in kernel.basis:
        total = field.zero()
        for a, b in zip(m.row(0), v):
            total = total + a * b
        assert total.is_zero


def test_subspace_canonical_under_row_mixing():
    rng = random.Random(127)
    for _ in range(15):
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(5)] for _ in range(3)]
        original = Subspace(5, rows)
        mixed = [
            [a + 2 * b for a, b in zip(rows[0], rows[1])],
            [3 * b - c for b, c in zip(rows[1], rows[2])],
            [c for c in rows[2]],
        ]
        assert Subspace(5, mixed) == original


def test_subspace_contains_vector():
    s = Subspace(3, [[1, 0, 1], [0, 1, 1]])
    assert s.dim == 2
    assert s.contains_vector([2, 3, 5])
    assert not s.contains_vector([1, 0, 0])
    with pytest.raises(AmbientMismatch):
        s.contains_vector([1, 0])


def test_span_contains_partial_order():
    outer = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    inner = Subspace(3, [[1, 1, 0]])
    other = Subspace(3, [[0, 0, 1]])
    assert span_contains(outer, inner)
    assert not span_contains(outer, other)
    assert span_contains(outer, Subspace.zero(3))
    with pytest.raises(AmbientMismatch):
        span_contains(outer, Subspace.zero(4))


def test_row_space_equals_subspace_of_rows():
    m = ExactMatrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    space = row_space(m)
    assert space.dim == 2
    assert space == Subspace(3, [[1, 2, 3], [0, 1, 1]])


def test_full_and_zero_subspaces():
    full = Subspace.full(3)
    assert full.dim == 3
    assert full.contains_vector([Fraction(1, 7), 0, -2])
    zero = Subspace.zero(3)
    assert zero.is_zero and zero.dim == 0
    assert span_contains(full, zero)


def test_subspace_rejects_wrong_ambient():
    with pytest.raises(AmbientMismatch):
        Subspace(3, [[1, 2]])
