"""Exact matrix layer: determinants, inverses, kernels, and their contracts."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hilbertgrade import (
    GF,
    QQ,
    FieldMismatchError,
    Matrix,
    ShapeError,
    SingularMatrixError,
)
from helpers import laplace_det, random_invertible, random_matrix


def test_det_identity():
    assert Matrix.identity(QQ, 3).det() == 1
    assert Matrix.identity(GF(7), 4).det() == 1


def test_det_odd_permutation():
    assert Matrix.from_rows(QQ, [[0, 1], [1, 0]]).det() == -1


def test_det_frozen_4x4_against_laplace_oracle():
    # Expected values computed with the cofactor-expansion oracle.
    m = Matrix.from_rows(
        QQ, [[-1, 0, -2, -2], [-2, -4, -1, 2], [3, 4, -2, -3], [3, 5, 5, 3]]
    )
    assert m.det() == -57
    m2 = Matrix.from_rows(
        QQ,
        [
            [Fraction(x) for x in row]
            for row in [
                ["-5/2", "-5/2", "-3", "3/2"],
                ["-3/2", "0", "-4/3", "-1/3"],
                ["2", "-2", "-4", "-2/3"],
                ["3/2", "4/3", "3", "-4/3"],
            ]
        ],
    )
    assert m2.det() == Fraction(-647, 27)


def test_det_random_4x4_matches_laplace_oracle():
    rng = random.Random(41)
    for _ in range(25):
        m = random_matrix(rng, QQ, 4)
        assert m.det() == laplace_det(m.row_lists())
    for _ in range(25):
        m = random_matrix(rng, GF(7), 4)
        assert m.det() == laplace_det(m.row_lists())


def test_inverse_examples():
    ident = Matrix.identity(QQ, 3)
    assert ident.inverse() == ident
    diag = Matrix.from_rows(QQ, [[2, 0], [0, 3]])
    assert diag.inverse() == Matrix.from_rows(QQ, [[Fraction(1, 2), 0], [0, Fraction(1, 3)]])


def test_inverse_multiplies_back_to_identity():
    rng = random.Random(42)
    for field in (QQ, GF(5)):
        for _ in range(15):
            m = random_invertible(rng, field, 3)
            assert m * m.inverse() == Matrix.identity(field, 3)
            assert m.inverse() * m == Matrix.identity(field, 3)


def test_kernel_dim_examples():
    zero = Matrix(QQ, 2, 2, [0, 0, 0, 0])
    assert zero.kernel_dim() == 2
    assert Matrix.identity(QQ, 4).kernel_dim() == 0
    assert Matrix.from_rows(QQ, [[1, 1], [1, 1]]).kernel_dim() == 1


def test_det_is_multiplicative():
    rng = random.Random(7)
    for field in (QQ, GF(11)):
        for _ in range(20):
            a = random_matrix(rng, field, 3)
            b = random_matrix(rng, field, 3)
            assert (a * b).det() == a.det() * b.det()


def test_inverse_is_involutive():
    rng = random.Random(8)
    for field in (QQ, GF(13)):
        for _ in range(15):
            a = random_invertible(rng, field, 3)
            assert a.inverse().inverse() == a


def test_rank_plus_kernel_is_cols():
    rng = random.Random(9)
    for field in (QQ, GF(3)):
        for _ in range(20):
            rows = rng.randint(1, 5)
            cols = rng.randint(1, 5)
            if field is QQ:
                entries = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(rows * cols)]
            else:
                entries = [rng.randrange(3) for _ in range(rows * cols)]
            m = Matrix(field, rows, cols, entries)
            assert m.kernel_dim() + m.rank() == cols
            assert m.rank() == m.transpose().rank()


def test_rank_of_rank_deficient_matrix_with_interior_zero():
    # Regression: fraction-free elimination must rescale rows whose
    # pivot-column entry is zero; skipping them broke later exact
    # divisions and inflated the rank of this matrix to 5.
    m = Matrix.from_rows(
        QQ,
        [
            [-3, 2, 4, 2, 2],
            [-1, -2, 2, 2, 0],
            [0, 4, 4, 8, 0],
            [-1, 4, 2, 2, 2],
            [0, -1, -2, -4, 1],
            [4, 3, -2, 4, -3],
        ],
    )
    assert m.rank() == 4
    assert m.kernel_dim() == 1


def test_rank_of_low_rank_products():
    # Sums of k outer products have rank <= k; cross-check against the
    # plain Gauss oracle on exactly these rank-deficient shapes.
    rng = random.Random(14)
    for field in (QQ, GF(5)):
        for _ in range(40):
            nr, nc = rng.randint(2, 6), rng.randint(2, 6)
            k = rng.randint(0, min(nr, nc))
            rows = [[field.zero] * nc for _ in range(nr)]
            for _ in range(k):
                u = [field.coerce(rng.randint(-2, 2)) for _ in range(nr)]
                v = [field.coerce(rng.randint(-2, 2)) for _ in range(nc)]
                rows = [[rows[i][j] + u[i] * v[j] for j in range(nc)] for i in range(nr)]
            m = Matrix.from_rows(field, rows)
            assert m.rank() <= k
            assert m.rank() == m.transpose().rank()
            assert m.rank() + m.kernel_dim() == nc


def test_rank_matches_gauss_oracle_over_qq():
    # Independent oracle: plain Fraction Gaussian elimination.
    def gauss_rank(rows):
        rows = [list(r) for r in rows]
        rank = 0
        ncols = len(rows[0])
        for c in range(ncols):
            piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            pivot = rows[rank][c]
            rows[rank] = [x / pivot for x in rows[rank]]
            for i in range(len(rows)):
                if i != rank and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
            rank += 1
        return rank

    rng = random.Random(10)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        entries = [Fraction(rng.randint(-2, 2)) for _ in range(rows * cols)]
        m = Matrix(QQ, rows, cols, entries)
        assert m.rank() == gauss_rank(m.row_lists())


def test_shape_and_singularity_errors():
    with pytest.raises(ShapeError):
        Matrix(QQ, 2, 3, [1, 2, 3, 4]).det()
    with pytest.raises(ShapeError):
        Matrix(QQ, 2, 2, [1, 2, 3])
    with pytest.raises(ShapeError):
        Matrix.from_rows(QQ, [[1, 2], [3]])
    a = Matrix.identity(QQ, 2)
    b = Matrix.identity(QQ, 3)
    with pytest.raises(ShapeError):
        a * b
    with pytest.raises(SingularMatrixError):
        Matrix.from_rows(QQ, [[1, 1], [1, 1]]).inverse()


def test_mixed_field_matrices_are_rejected():
    a = Matrix.identity(QQ, 2)
    b = Matrix.identity(GF(5), 2)
    with pytest.raises(FieldMismatchError):
        a * b
    with pytest.raises(FieldMismatchError):
        a + b
    with pytest.raises(FieldMismatchError):
        Matrix(QQ, 1, 1, [GF(5).coerce(1)])


def test_matrices_are_hashable_and_structural():
    a = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    b = Matrix.from_rows(QQ, [[Fraction(2, 2), 2], [3, 4]])
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
    assert a != Matrix.from_rows(GF(5), [[1, 2], [3, 4]])
