"""Exact determinant, rank, and matrix plumbing."""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from oracles import leibniz_det
from srcodes import gf
from srcodes.exactla import (
    DimensionMismatch,
    ExactMatrix,
    IndexOutOfBounds,
    NonSquare,
    check_index_set,
    weight,
)

F2 = gf.default_field(2, 1)
F3 = gf.default_field(3, 1)
F4 = gf.default_field(2, 2)


def random_matrix(field, rows, cols, rng):
    q = field.order
    return ExactMatrix(
        field,
        [[field.from_index(rng.randrange(q)) for _ in range(cols)] for _ in range(rows)],
    )


class TestDet:
    def test_identity(self):
        assert ExactMatrix.identity(F2, 3).det() == F2.one()

    def test_two_equal_rows(self):
        m = ExactMatrix.from_ints(F3, [[1, 2, 0], [1, 2, 0], [0, 1, 1]])
        assert m.det() == F3.zero()

    def test_gf4_cofactor_fixture(self):
        # [[a, 1], [1, a]]: det = a^2 - 1 = (a + 1) - 1 = a  (a^2 = a + 1)
        a, one = F4.alpha, F4.one()
        m = ExactMatrix(F4, [[a, one], [one, a]])
        assert m.det() == a
        assert leibniz_det(m) == a

    def test_non_square_rejected(self):
        with pytest.raises(NonSquare):
            ExactMatrix.zeros(F2, 2, 3).det()

    def test_empty_matrix_det_is_one(self):
        assert ExactMatrix(F2, []).det() == F2.one()


class TestRank:
    def test_zero_matrix(self):
        assert ExactMatrix.zeros(F3, 3, 4).rank() == 0

    def test_identity(self):
        assert ExactMatrix.identity(F3, 4).rank() == 4

    def test_all_ones_gf2(self):
        assert ExactMatrix.from_ints(F2, [[1, 1], [1, 1]]).rank() == 1

    def test_rectangular(self):
        m = ExactMatrix.from_ints(F3, [[1, 2], [2, 1], [0, 0]])
        assert m.rank() == 2


class TestPlumbing:
    def test_submatrix_of_identity(self):
        m = ExactMatrix.identity(F2, 3).submatrix((0, 2), (0, 2))
        assert m == ExactMatrix.identity(F2, 2)

    def test_submatrix_preserves_order(self):
        m = ExactMatrix.from_ints(F3, [[0, 1, 2], [1, 2, 0]])
        s = m.submatrix((0, 1), (1, 2))
        assert [[F3.index_of(x) for x in row] for row in s.entries] == [[1, 2], [2, 0]]

    def test_bad_index_sets(self):
        m = ExactMatrix.identity(F2, 3)
        with pytest.raises(IndexOutOfBounds):
            m.submatrix((0, 3), (0, 1))
        with pytest.raises(IndexOutOfBounds):
            m.submatrix((1, 0), (0, 1))  # not increasing
        with pytest.raises(IndexOutOfBounds):
            check_index_set((0, 0), 3)

    def test_weight(self):
        assert weight([F2.zero()] * 5) == 0
        assert weight([F4.one(), F4.zero(), F4.alpha]) == 2

    def test_mat_vec_dimension_check(self):
        with pytest.raises(DimensionMismatch):
            ExactMatrix.identity(F2, 2).mat_vec((F2.one(),))

    def test_mat_vec(self):
        m = ExactMatrix.from_ints(F3, [[1, 2], [0, 1]])
        v = (F3.from_index(2), F3.from_index(2))
        out = m.mat_vec(v)
        assert [F3.index_of(x) for x in out] == [(2 + 4) % 3, 2]

    def test_mixed_field_entries_rejected(self):
        with pytest.raises(gf.MixedFields):
            ExactMatrix(F2, [[F3.one()]])

    def test_transpose_and_permute(self):
        m = ExactMatrix.from_ints(F3, [[0, 1], [2, 0]])
        assert m.transpose().entries[0][1] == m.entries[1][0]
        p = m.permute((1, 0), (0, 1))
        assert p.entries[0][0] == m.entries[1][0]


class TestLeibnizAgreement:
    @pytest.mark.parametrize("field,order", [(F2, 1), (F2, 2), (F2, 3), (F3, 1), (F3, 2), (F3, 3)])
    def test_exhaustive_small_orders(self, field, order):
        q = field.order
        els = [field.from_index(i) for i in range(q)]
        for flat in itertools.product(range(q), repeat=order * order):
            grid = [
                [els[flat[i * order + j]] for j in range(order)] for i in range(order)
            ]
            m = ExactMatrix(field, grid)
            assert m.det() == leibniz_det(m)

    @pytest.mark.parametrize("field", [F2, F3])
    def test_seeded_order_four(self, field):
        rng = random.Random(4040 + field.p)
        for _ in range(500):
            m = random_matrix(field, 4, 4, rng)
            assert m.det() == leibniz_det(m)


class TestDetMultiplicativity:
    @pytest.mark.parametrize("field", [F2, F3, F4])
    def test_det_of_product(self, field):
        rng = random.Random(5151 + field.order)
        for order in (2, 3, 4, 5):
            for _ in range(20):
                a = random_matrix(field, order, order, rng)
                b = random_matrix(field, order, order, rng)
                assert a.matmul(b).det() == a.det() * b.det()


def _gf2_minor_rank_oracle():
    """Max order of a nonzero minor for all 4x4 matrices over GF(2),
    vectorized: determinants via Leibniz with AND/XOR."""
    count = 1 << 16
    mats = np.zeros((count, 4, 4), dtype=np.uint8)
    vals = np.arange(count, dtype=np.uint32)
    for i in range(4):
        for j in range(4):
            mats[:, i, j] = (vals >> (i * 4 + j)) & 1
    best = np.zeros(count, dtype=np.int8)
    for order in range(1, 5):
        perms = list(itertools.permutations(range(order)))
        any_nonzero = np.zeros(count, dtype=bool)
        for rs in itertools.combinations(range(4), order):
            for cs in itertools.combinations(range(4), order):
                det = np.zeros(count, dtype=np.uint8)
                for perm in perms:
                    term = np.ones(count, dtype=np.uint8)
                    for i, pj in enumerate(perm):
                        term &= mats[:, rs[i], cs[pj]]
                    det ^= term  # char 2: signs collapse
                any_nonzero |= det.astype(bool)
        best[any_nonzero] = order
    return mats, best


def test_rank_equals_largest_nonzero_minor_gf2_exhaustive():
    mats, oracle = _gf2_minor_rank_oracle()
    els = [F2.zero(), F2.one()]
    for idx in range(mats.shape[0]):
        grid = [[els[int(v)] for v in row] for row in mats[idx]]
        assert ExactMatrix(F2, grid).rank() == int(oracle[idx])
