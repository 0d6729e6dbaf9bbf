"""Vectorized exhaustive enumeration of superregular matrices.

Matrices are arrays of element indices (index 0 is the zero element) and
all arithmetic goes through precomputed addition/multiplication tables,
so the engine works over any small field, not just prime ones.

Enumeration is level-wise with pruning: every row-prefix of a
superregular matrix is superregular (a minor of a prefix is a minor of
the whole), so level r keeps exactly the r-row matrices whose minors all
pass, and extending by one row only requires checking the minors that
touch the new row.  This visits the full matrix space implicitly while
materializing only the surviving prefixes.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from srcodes.exactla import ExactMatrix
from srcodes.gf import FieldSpec


def field_tables(field: FieldSpec):
    """(ADD, MUL, NEG) index tables for a small field."""
    q = field.order
    els = [field.from_index(i) for i in range(q)]
    index = {el: i for i, el in enumerate(els)}
    add = np.zeros((q, q), dtype=np.int16)
    mul = np.zeros((q, q), dtype=np.int16)
    neg = np.zeros(q, dtype=np.int16)
    for i, a in enumerate(els):
        neg[i] = index[-a]
        for j, b in enumerate(els):
            add[i, j] = index[a + b]
            mul[i, j] = index[a * b]
    return add, mul, neg


class FieldOps:
    """Bundles a field with its index tables."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.q = field.order
        self.add, self.mul, self.neg = field_tables(field)

    def matrix_from_indices(self, arr) -> ExactMatrix:
        els = [self.field.from_index(i) for i in range(self.q)]
        return ExactMatrix(self.field, [[els[int(v)] for v in row] for row in arr])


def _perm_data(order: int):
    perms = []
    for perm in permutations(range(order)):
        inv = sum(
            1
            for i in range(order)
            for j in range(i + 1, order)
            if perm[i] > perm[j]
        )
        perms.append((perm, -1 if inv % 2 else 1))
    return perms


def _minor_violations(ops: FieldOps, sub: np.ndarray, perm_data) -> np.ndarray:
    """Mask of submatrices (batch, s, s) that are nontrivial with zero
    determinant."""
    batch = sub.shape[0]
    s = sub.shape[1]
    rowsel = np.arange(s)
    det = np.zeros(batch, dtype=np.int16)
    nontrivial = np.zeros(batch, dtype=bool)
    for perm, sign in perm_data:
        cells = sub[:, rowsel, list(perm)]
        term = cells[:, 0]
        for j in range(1, s):
            term = ops.mul[term, cells[:, j]]
        nontrivial |= (cells != 0).all(axis=1)
        if sign < 0:
            term = ops.neg[term]
        det = ops.add[det, term]
    return nontrivial & (det == 0)


def _filter_extension(ops: FieldOps, cand: np.ndarray) -> np.ndarray:
    """Keep candidates whose minors touching the last row all pass."""
    m, r, b = cand.shape
    alive = np.arange(m)
    for s in range(2, min(r, b) + 1):  # order-1 minors cannot violate
        perm_data = _perm_data(s)
        for prev_rows in combinations(range(r - 1), s - 1):
            rsel = list(prev_rows) + [r - 1]
            for cols in combinations(range(b), s):
                if alive.size == 0:
                    return alive
                sub = cand[np.ix_(alive, rsel, list(cols))]
                bad = _minor_violations(ops, sub, perm_data)
                if bad.any():
                    alive = alive[~bad]
    return alive


def enumerate_superregular(
    ops: FieldOps, a: int, b: int, chunk: int = 1 << 21
) -> np.ndarray:
    """All superregular a x b matrices with no zero row, as an index
    array of shape (count, a, b)."""
    q = ops.q
    rows = np.array(
        [[(v // q**j) % q for j in range(b)] for v in range(1, q**b)],
        dtype=np.int16,
    )
    level = rows[:, None, :]
    n_rows = rows.shape[0]
    for r in range(2, a + 1):
        per = max(1, chunk // n_rows)
        blocks = []
        for start in range(0, level.shape[0], per):
            block = level[start : start + per]
            m = block.shape[0]
            cand = np.empty((m * n_rows, r, b), dtype=np.int16)
            cand[:, : r - 1, :] = np.repeat(block, n_rows, axis=0)
            cand[:, r - 1, :] = np.tile(rows, (m, 1))
            alive = _filter_extension(ops, cand)
            if alive.size:
                blocks.append(cand[alive])
        if not blocks:
            return np.empty((0, a, b), dtype=np.int16)
        level = np.concatenate(blocks, axis=0)
    return level


def all_nonzero_vectors(ops: FieldOps, b: int) -> np.ndarray:
    """All length-b vectors with every coordinate nonzero."""
    q = ops.q
    vals = np.arange(1, q, dtype=np.int16)
    grids = np.meshgrid(*([vals] * b), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def min_combination_weight(ops: FieldOps, mats: np.ndarray, us: np.ndarray) -> int:
    """Smallest Hamming weight of (matrix @ u) over all matrices in the
    batch and all vectors u."""
    if mats.shape[0] == 0:
        raise ValueError("empty batch")
    a, b = mats.shape[1], mats.shape[2]
    best = a + 1
    step = max(1, (1 << 22) // (a * us.shape[0] + 1))
    for start in range(0, mats.shape[0], step):
        batch = mats[start : start + step]
        acc = np.zeros((batch.shape[0], a, us.shape[0]), dtype=np.int16)
        for j in range(b):
            prod = ops.mul[batch[:, :, j][:, :, None], us[None, None, :, j]]
            acc = ops.add[acc, prod]
        wt = (acc != 0).sum(axis=1)
        best = min(best, int(wt.min()))
    return best
