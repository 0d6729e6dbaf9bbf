"""Superregularity machinery.

A term of a determinant (one product in the Leibniz expansion) is trivial
when it contains a zero entry; a minor is trivial when every term is
trivial.  A matrix is superregular when every nontrivial minor is nonzero.

Whether a minor is trivial depends only on the zero/nonzero support of
the matrix: the minor has a nonzero term exactly when the bipartite graph
between its rows and columns, with edges at nonzero cells, has a perfect
matching.  That reformulation (structural rank) is what makes the
decision procedure tractable, and it is cross-checked against brute-force
Leibniz enumeration in the test suite.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from srcodes.exactla import (
    ExactMatrix,
    IndexSet,
    NonSquare,
    check_index_set,
    det_grid,
    weight,
)
from srcodes.gf import FieldElement

__all__ = [
    "SupportPattern",
    "MinorAddress",
    "SuperregReport",
    "WeightBoundReport",
    "BudgetExceeded",
    "TrivialFullMinor",
    "BadShape",
    "pattern_of",
    "is_trivial_minor",
    "is_superregular",
    "antidiagonal_ordering",
    "check_weight_bound",
    "DEFAULT_MINOR_BUDGET",
]

DEFAULT_MINOR_BUDGET = 10**8


class BudgetExceeded(Exception):
    """The configured cap on determinant evaluations was reached."""


class TrivialFullMinor(Exception):
    """The full minor of the pattern has no nonzero term, so no
    antidiagonal column ordering exists."""


class BadShape(ValueError):
    """Matrix shape violates a precondition (needs rows >= cols)."""


class SupportPattern:
    """Boolean zero/nonzero grid of a matrix."""

    __slots__ = ("rows", "cols", "nonzero", "_row_masks")

    def __init__(self, nonzero: Sequence[Sequence[bool]]):
        rows = len(nonzero)
        cols = len(nonzero[0]) if rows else 0
        for row in nonzero:
            if len(row) != cols:
                raise ValueError("ragged pattern grid")
        self.rows = rows
        self.cols = cols
        self.nonzero = tuple(tuple(bool(x) for x in row) for row in nonzero)
        masks = []
        for row in self.nonzero:
            m = 0
            for j, flag in enumerate(row):
                if flag:
                    m |= 1 << j
            masks.append(m)
        self._row_masks = tuple(masks)

    @classmethod
    def from_matrix(cls, m: ExactMatrix) -> "SupportPattern":
        return cls([[bool(x) for x in row] for row in m.entries])

    def transpose(self) -> "SupportPattern":
        return SupportPattern(
            [[self.nonzero[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SupportPattern):
            return NotImplemented
        return self.nonzero == other.nonzero

    def __hash__(self) -> int:
        return hash(self.nonzero)

    def __repr__(self) -> str:
        body = "; ".join(
            "".join("x" if f else "." for f in row) for row in self.nonzero
        )
        return f"SupportPattern({self.rows}x{self.cols}: {body})"


def pattern_of(m: ExactMatrix) -> SupportPattern:
    """Support pattern of a matrix: true exactly at nonzero entries."""
    return SupportPattern.from_matrix(m)


@dataclass(frozen=True)
class MinorAddress:
    """Row and column index sets of a square submatrix."""

    row_set: IndexSet
    col_set: IndexSet

    def __post_init__(self):
        if len(self.row_set) != len(self.col_set) or not self.row_set:
            raise ValueError("minor address needs equal-size nonempty index sets")

    @property
    def order(self) -> int:
        return len(self.row_set)


@dataclass(frozen=True)
class SuperregReport:
    """Outcome of a superregularity check.

    ``witness`` is present exactly when the matrix is not superregular: a
    nontrivial minor whose determinant vanished.  ``minors_checked``
    counts determinant evaluations; trivially skipped minors are counted
    separately.
    """

    is_superregular: bool
    witness: Optional[MinorAddress]
    minors_checked: int
    trivial_skipped: int


@dataclass(frozen=True)
class WeightBoundReport:
    """Outcome of the column-combination weight check."""

    holds: bool
    counterexample: Optional[tuple[FieldElement, ...]]
    exhaustive: bool
    checked: int


def _has_perfect_matching(masks: Sequence[int]) -> bool:
    """Kuhn's augmenting-path matching on a row->column bitmask adjacency.

    Returns True when every row can be matched to a distinct column.
    """
    order = len(masks)
    owner = [-1] * order  # local column index -> matched row

    def augment(r: int, seen: list[int]) -> bool:
        m = masks[r]
        while m:
            low = m & -m
            m ^= low
            if seen[0] & low:
                continue
            seen[0] |= low
            j = low.bit_length() - 1
            if owner[j] < 0 or augment(owner[j], seen):
                owner[j] = r
                return True
        return False

    for r in range(order):
        if not augment(r, [0]):
            return False
    return True


def _local_masks(
    pattern: SupportPattern, row_set: Sequence[int], col_set: Sequence[int]
) -> list[int]:
    full = pattern._row_masks
    out = []
    for i in row_set:
        src = full[i]
        m = 0
        for bit, j in enumerate(col_set):
            if (src >> j) & 1:
                m |= 1 << bit
        out.append(m)
    return out


def is_trivial_minor(pattern: SupportPattern, address: MinorAddress) -> bool:
    """True when every Leibniz term of the addressed minor is trivial,
    i.e. the restricted support admits no perfect row-column matching."""
    rows = check_index_set(address.row_set, pattern.rows)
    cols = check_index_set(address.col_set, pattern.cols)
    if len(rows) == pattern.rows and cols == tuple(range(pattern.cols)) \
            and pattern.rows == pattern.cols:
        return not _has_perfect_matching(pattern._row_masks)
    return not _has_perfect_matching(_local_masks(pattern, rows, cols))


def _iter_addresses(rows: int, cols: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All minor addresses: order ascending, then lexicographic row and
    column sets.  This fixed order makes witnesses reproducible."""
    for order in range(1, min(rows, cols) + 1):
        for rs in itertools.combinations(range(rows), order):
            for cs in itertools.combinations(range(cols), order):
                yield rs, cs


def _scan_chunk(
    matrix: ExactMatrix,
    pattern: SupportPattern,
    chunk: list[tuple[tuple[int, ...], tuple[int, ...]]],
) -> tuple[Optional[MinorAddress], int, int]:
    """Scan a batch of addresses; returns (first violation, dets, trivial)."""
    entries = matrix.entries
    field = matrix.field
    dets = 0
    trivial = 0
    for rs, cs in chunk:
        if not _has_perfect_matching(_local_masks(pattern, rs, cs)):
            trivial += 1
            continue
        dets += 1
        grid = [[entries[i][j] for j in cs] for i in rs]
        if not det_grid(field, grid):
            return MinorAddress(rs, cs), dets, trivial
    return None, dets, trivial


def is_superregular(
    matrix: ExactMatrix,
    mode: str = "deterministic",
    budget: int = DEFAULT_MINOR_BUDGET,
    threads: Optional[int] = None,
) -> SuperregReport:
    """Decide superregularity by checking every nontrivial minor.

    In deterministic mode the reported witness is the first zero
    nontrivial minor in the fixed enumeration order; in parallel mode the
    address space is partitioned across worker threads and any witness may
    be reported, but the boolean verdict is identical.  ``budget`` caps
    the number of determinant evaluations.
    """
    if mode not in ("deterministic", "parallel"):
        raise ValueError(f"unknown mode {mode!r}")
    pattern = pattern_of(matrix)

    if mode == "deterministic":
        entries = matrix.entries
        field = matrix.field
        dets = 0
        trivial = 0
        for rs, cs in _iter_addresses(matrix.rows, matrix.cols):
            if not _has_perfect_matching(_local_masks(pattern, rs, cs)):
                trivial += 1
                continue
            if dets >= budget:
                raise BudgetExceeded(f"minor budget {budget} exhausted")
            dets += 1
            grid = [[entries[i][j] for j in cs] for i in rs]
            if not det_grid(field, grid):
                return SuperregReport(False, MinorAddress(rs, cs), dets, trivial)
        return SuperregReport(True, None, dets, trivial)

    # parallel mode: chunked scan in waves; any witness is acceptable
    chunk_size = 512
    workers = threads if threads and threads > 0 else 4
    addresses = _iter_addresses(matrix.rows, matrix.cols)
    dets = 0
    trivial = 0
    witness: Optional[MinorAddress] = None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        while witness is None:
            wave = [
                chunk
                for chunk in (
                    list(itertools.islice(addresses, chunk_size))
                    for _ in range(workers)
                )
                if chunk
            ]
            if not wave:
                break
            for found, d, t in pool.map(
                lambda c: _scan_chunk(matrix, pattern, c), wave
            ):
                dets += d
                trivial += t
                if found is not None and witness is None:
                    witness = found
            if dets > budget:
                raise BudgetExceeded(f"minor budget {budget} exhausted")
    if witness is not None:
        return SuperregReport(False, witness, dets, trivial)
    return SuperregReport(True, None, dets, trivial)


def antidiagonal_ordering(pattern: SupportPattern) -> tuple[int, ...]:
    """Column ordering that puts a nonzero term on the antidiagonal.

    Scanning rows bottom-up, each step picks the smallest unused column
    with a nonzero cell in that row.  The scan can only run out of
    candidates when the full minor is trivial; conversely, a completed
    ordering exhibits a nonzero term, so completion certifies
    nontriviality.  Indices are 0-based.
    """
    if pattern.rows != pattern.cols:
        raise NonSquare("antidiagonal ordering needs a square pattern")
    m = pattern.rows
    used = 0
    order = []
    for step in range(m):
        row_mask = pattern._row_masks[m - 1 - step] & ~used
        if not row_mask:
            raise TrivialFullMinor(
                f"row {m - 1 - step} has no unused nonzero column; "
                "the full minor is trivial"
            )
        low = row_mask & -row_mask
        j = low.bit_length() - 1
        used |= low
        order.append(j)
    return tuple(order)


def check_weight_bound(
    matrix: ExactMatrix,
    budget: int = 10**6,
    seed: int = 0,
) -> WeightBoundReport:
    """Test whether every all-nonzero column combination of an a x b
    matrix (a >= b) has Hamming weight at least a - b + 1.

    This is an experimental oracle: it does not assume the matrix is
    superregular.  Combinations u are normalized so their first
    coordinate is 1 (scaling u scales the product, preserving weight),
    which cuts the search space by a factor of q - 1.  When even the
    normalized space exceeds the budget, a seeded random sample is
    checked instead and the report is flagged non-exhaustive.
    """
    a, b = matrix.rows, matrix.cols
    if a < b:
        raise BadShape(f"need rows >= cols, got {a}x{b}")
    field = matrix.field
    q = field.order
    bound = a - b + 1
    nonzero = [field.from_index(i) for i in range(1, q)]
    one = field.one()

    exhaustive = (q - 1) ** b <= budget
    checked = 0
    if exhaustive:
        for rest in itertools.product(nonzero, repeat=b - 1):
            u = (one,) + rest
            checked += 1
            if weight(matrix.mat_vec(u)) < bound:
                return WeightBoundReport(False, u, True, checked)
        return WeightBoundReport(True, None, True, checked)

    rng = random.Random(seed)
    for _ in range(budget):
        u = tuple(nonzero[rng.randrange(q - 1)] for _ in range(b))
        checked += 1
        if weight(matrix.mat_vec(u)) < bound:
            return WeightBoundReport(False, u, False, checked)
    return WeightBoundReport(True, None, False, checked)
