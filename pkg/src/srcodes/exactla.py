"""Exact dense linear algebra over a FieldSpec.

Determinants and ranks are computed by Gaussian elimination with exact
field arithmetic; there is no floating point anywhere.  Pivoting picks
the first nonzero entry in the column (a finite field has no magnitudes)
and the determinant tracks the row-swap parity, which is a no-op in
characteristic 2 but implemented uniformly.
"""

from __future__ import annotations

from typing import Sequence

from srcodes.gf import FieldElement, FieldSpec, MixedFields

__all__ = [
    "ExactMatrix",
    "IndexSet",
    "NonSquare",
    "IndexOutOfBounds",
    "DimensionMismatch",
    "weight",
    "check_index_set",
]

IndexSet = tuple[int, ...]


class NonSquare(ValueError):
    """Operation requires a square matrix."""


class IndexOutOfBounds(IndexError):
    """Index set escapes the matrix bounds or is not strictly increasing."""


class DimensionMismatch(ValueError):
    """Operand shapes do not conform."""


def check_index_set(indices: Sequence[int], bound: int) -> IndexSet:
    """Validate a strictly increasing 0-based index set within [0, bound)."""
    idx = tuple(int(i) for i in indices)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise IndexOutOfBounds(f"index set {idx} is not strictly increasing")
    if idx and (idx[0] < 0 or idx[-1] >= bound):
        raise IndexOutOfBounds(f"index set {idx} escapes bound {bound}")
    return idx


def weight(vec: Sequence[FieldElement]) -> int:
    """Hamming weight: the number of nonzero entries."""
    return sum(1 for x in vec if x)


class ExactMatrix:
    """Immutable dense matrix of FieldElement values."""

    __slots__ = ("rows", "cols", "field", "_grid")

    def __init__(self, field: FieldSpec, grid: Sequence[Sequence[FieldElement]]):
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        for row in grid:
            if len(row) != cols:
                raise DimensionMismatch("ragged rows")
            for x in row:
                if x.field != field:
                    raise MixedFields("matrix entries from a different field")
        self.field = field
        self.rows = rows
        self.cols = cols
        self._grid = tuple(tuple(row) for row in grid)

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "ExactMatrix":
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "ExactMatrix":
        zero = field.zero()
        return cls(field, [[zero] * cols for _ in range(rows)])

    @classmethod
    def from_ints(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "ExactMatrix":
        """Build from integer entries (reduced into the prime subfield)."""
        one = field.one()

        def lift(v: int) -> FieldElement:
            out = field.zero()
            for _ in range(v % field.p):
                out = out + one
            return out

        cache = {v: lift(v) for v in {x % field.p for row in rows for x in row}}
        return cls(field, [[cache[x % field.p] for x in row] for row in rows])

    # -- accessors --------------------------------------------------------

    def entry(self, i: int, j: int) -> FieldElement:
        return self._grid[i][j]

    def row(self, i: int) -> tuple[FieldElement, ...]:
        return self._grid[i]

    def column(self, j: int) -> tuple[FieldElement, ...]:
        return tuple(row[j] for row in self._grid)

    @property
    def entries(self) -> tuple[tuple[FieldElement, ...], ...]:
        return self._grid

    # -- operations --------------------------------------------------------

    def submatrix(self, row_set: Sequence[int], col_set: Sequence[int]) -> "ExactMatrix":
        ri = check_index_set(row_set, self.rows)
        ci = check_index_set(col_set, self.cols)
        return ExactMatrix(self.field, [[self._grid[i][j] for j in ci] for i in ri])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.field,
            [[self._grid[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def mat_vec(self, vec: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector length {len(vec)} != cols {self.cols}")
        out = []
        for row in self._grid:
            acc = self.field.zero()
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions do not conform")
        cols = list(zip(*other._grid))
        zero = self.field.zero()
        grid = []
        for row in self._grid:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            grid.append(out_row)
        return ExactMatrix(self.field, grid)

    def scale_row(self, i: int, c: FieldElement) -> "ExactMatrix":
        grid = [list(r) for r in self._grid]
        grid[i] = [c * x for x in grid[i]]
        return ExactMatrix(self.field, grid)

    def scale_col(self, j: int, c: FieldElement) -> "ExactMatrix":
        grid = [list(r) for r in self._grid]
        for row in grid:
            row[j] = c * row[j]
        return ExactMatrix(self.field, grid)

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "ExactMatrix":
        """Reorder rows and columns: entry (i, j) of the result is
        entry (row_perm[i], col_perm[j]) of self."""
        return ExactMatrix(
            self.field,
            [[self._grid[ri][cj] for cj in col_perm] for ri in row_perm],
        )

    def det(self) -> FieldElement:
        """Exact determinant by Gaussian elimination."""
        if self.rows != self.cols:
            raise NonSquare(f"{self.rows}x{self.cols} matrix has no determinant")
        return det_grid(self.field, [list(row) for row in self._grid])

    def rank(self) -> int:
        """Exact rank by Gaussian elimination."""
        grid = [list(row) for row in self._grid]
        return _eliminate(self.field, grid)

    def is_zero(self) -> bool:
        return all(not x for row in self._grid for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self._grid == other._grid

    def __hash__(self) -> int:
        return hash((self.field, self._grid))

    def __repr__(self) -> str:
        from srcodes.gf import element_text

        body = "; ".join(
            " ".join(element_text(x) for x in row) for row in self._grid
        )
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"


def det_grid(field: FieldSpec, grid: list[list[FieldElement]]) -> FieldElement:
    """Determinant of a square grid of elements; destroys the grid.

    Shared fast path for callers that already hold raw entry grids and do
    not want to pay for ExactMatrix construction per minor.
    """
    n = len(grid)
    if n == 0:
        return field.one()
    det = field.one()
    swaps = 0
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if grid[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            return field.zero()
        if pivot_row != col:
            grid[col], grid[pivot_row] = grid[pivot_row], grid[col]
            swaps += 1
        pivot = grid[col][col]
        det = det * pivot
        if col + 1 < n:
            inv = pivot.inverse()
            prow = grid[col]
            for r in range(col + 1, n):
                lead = grid[r][col]
                if lead:
                    factor = lead * inv
                    row = grid[r]
                    for c in range(col + 1, n):
                        if prow[c]:
                            row[c] = row[c] - factor * prow[c]
    if swaps % 2:
        det = -det
    return det


def _eliminate(field: FieldSpec, grid: list[list[FieldElement]]) -> int:
    """Row reduce in place, returning the rank."""
    rows = len(grid)
    cols = len(grid[0]) if rows else 0
    rank = 0
    for col in range(cols):
        pivot_row = None
        for r in range(rank, rows):
            if grid[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        grid[rank], grid[pivot_row] = grid[pivot_row], grid[rank]
        inv = grid[rank][col].inverse()
        prow = grid[rank]
        for r in range(rank + 1, rows):
            lead = grid[r][col]
            if lead:
                factor = lead * inv
                row = grid[r]
                for c in range(col, cols):
                    if prow[c]:
                        row[c] = row[c] - factor * prow[c]
        rank += 1
        if rank == rows:
            break
    return rank
