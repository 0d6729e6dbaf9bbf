"""Construction of alpha-power superregular matrices and certified codes.

The entries used here are powers alpha^beta of a primitive element whose
exponents beta double along rows and columns.  Any matrix with that
doubling discipline (and a compatible zero structure) is superregular
once the extension degree N exceeds every exponent that can appear in a
nonzero determinant term: distinct doubling chains cannot collide, so the
minimal term survives in the polynomial basis.

On top of that sits the certification route for convolutional codes: a
generator whose sliding matrix at the certification depth is superregular
generates a code whose distance meets the closed-form optimal bound, and
an explicit codeword of exactly that weight pins the distance from above.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from srcodes.convcode import (
    CodeSpec,
    PolyMatrix,
    certification_depth,
    codeword_weight,
    column_degrees,
    encode,
    is_column_reduced,
    optimal_bound,
    sliding_matrix,
)
from srcodes.exactla import ExactMatrix
from srcodes.gf import (
    DEFAULT_FACTOR_BUDGET,
    FieldElement,
    FieldSpec,
    alpha_pow,
    default_field,
    factor_with_budget,
)
from srcodes.superreg import DEFAULT_MINOR_BUDGET, SuperregReport, is_superregular

__all__ = [
    "ExponentPattern",
    "PatternReport",
    "Certificate",
    "HypothesisFailed",
    "CertificationFieldWarning",
    "exponent_pattern",
    "validate_exponent_pattern",
    "sliding_exponent_pattern",
    "field_degree_bound",
    "term_exponent",
    "realize_pattern",
    "build_generator",
    "check_entry_hypothesis",
    "certify_optimal",
    "search_superregular",
    "verifiable_degree",
    "certification_field",
    "splitmix64_stream",
    "MERSENNE_EXPONENTS",
]


class HypothesisFailed(Exception):
    """The generator violates the certification hypotheses (entry
    nonzeroness or column-reducedness)."""


class CertificationFieldWarning(UserWarning):
    """The field degree is below the safe bound for the exponent pattern;
    superregularity is no longer guaranteed in advance (it may still hold
    and is always checked exactly)."""


# Known exponents N for which 2^N - 1 is prime.  Primality is re-verified
# when a field is actually built, so this list is a search hint, not an
# article of faith.
MERSENNE_EXPONENTS = (
    2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127, 521, 607, 1279, 2203,
    2281, 3217, 4253, 4423, 9689, 9941, 11213, 19937, 21701, 23209,
    44497, 86243, 110503, 132049,
)


class ExponentPattern:
    """Grid of alpha exponents: each cell is either an integer beta >= 1
    (the entry is alpha^beta) or None (the entry is zero)."""

    __slots__ = ("rows", "cols", "cells")

    def __init__(self, cells: Sequence[Sequence[Optional[int]]]):
        rows = len(cells)
        cols = len(cells[0]) if rows else 0
        for row in cells:
            if len(row) != cols:
                raise ValueError("ragged exponent grid")
        self.rows = rows
        self.cols = cols
        self.cells = tuple(
            tuple(None if c is None else int(c) for c in row) for row in cells
        )

    def support(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(c is not None for c in row) for row in self.cells)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentPattern):
            return NotImplemented
        return self.cells == other.cells

    def __repr__(self) -> str:
        return f"ExponentPattern({self.rows}x{self.cols})"


@dataclass(frozen=True)
class PatternReport:
    """Outcome of the doubling-condition validation.

    ``condition`` identifies the first violated rule (1: a cell exponent
    below 1; 2: a zero cell with live cells both below it and to its
    left; 3: row doubling; 4: column doubling) and ``cells`` the
    offending cell pair, scanning row-major.
    """

    ok: bool
    condition: Optional[int] = None
    cells: Optional[tuple[tuple[int, int], tuple[int, int]]] = None


@dataclass(frozen=True)
class Certificate:
    """Optimality certificate for a constructed code.

    ``certified_distance`` is present exactly when the sliding matrix at
    the certification depth is superregular and an explicit codeword of
    weight equal to the optimal bound was exhibited; it then equals that
    bound.
    """

    spec: CodeSpec
    field: FieldSpec
    depth: int
    superreg_report: SuperregReport
    achieved_weight: Optional[int]
    certified_distance: Optional[int]


def exponent_pattern(
    n: int, k: int, indices: Sequence[int], mults: Sequence[int]
) -> list[ExponentPattern]:
    """Exponent grids for the coefficient matrices G_0..G_m of the
    doubling construction.

    Cell (r, s) of grid i (0-based) carries beta = 2^(n*i + r + s); it is
    zeroed when i exceeds the j-th smallest index and s falls in the
    first m_1 + ... + m_j columns, so each column s has degree equal to
    its assigned index and keeps all entries up to that degree nonzero.
    """
    spec = CodeSpec(n, k, tuple(indices), tuple(mults))
    prefix = []
    acc = 0
    for m in spec.mults:
        acc += m
        prefix.append(acc)
    out = []
    for i in range(spec.indices[-1] + 1):
        if i <= spec.indices[0]:
            zero_cols = 0
        else:
            t = next(pos for pos, nu in enumerate(spec.indices) if nu >= i)
            zero_cols = prefix[t - 1]
        cells: list[list[Optional[int]]] = []
        for r in range(n):
            row: list[Optional[int]] = []
            for s in range(k):
                if s < zero_cols:
                    row.append(None)
                else:
                    row.append(1 << (n * i + r + s))
            cells.append(row)
        out.append(ExponentPattern(cells))
    return out


def validate_exponent_pattern(pattern: ExponentPattern) -> PatternReport:
    """Check the doubling-construction conditions cellwise.

    Nonzero cells must hold exponents >= 1 that at least double left to
    right along each row and top to bottom along each column; every zero
    cell must have an all-zero column below it or an all-zero row prefix
    to its left.  The first violation in row-major order is reported.
    """
    cells = pattern.cells
    rows, cols = pattern.rows, pattern.cols
    for i in range(rows):
        for l in range(cols):
            beta = cells[i][l]
            if beta is None:
                below_zero = all(cells[i2][l] is None for i2 in range(i + 1, rows))
                left_zero = all(cells[i][l2] is None for l2 in range(l))
                if not (below_zero or left_zero):
                    below = next(
                        (i2, l) for i2 in range(i + 1, rows) if cells[i2][l] is not None
                    )
                    return PatternReport(False, 2, ((i, l), below))
                continue
            if beta < 1:
                return PatternReport(False, 1, ((i, l), (i, l)))
            for l2 in range(l + 1, cols):
                other = cells[i][l2]
                if other is not None and 2 * beta > other:
                    return PatternReport(False, 3, ((i, l), (i, l2)))
            for i2 in range(i + 1, rows):
                other = cells[i2][l]
                if other is not None and 2 * beta > other:
                    return PatternReport(False, 4, ((i, l), (i2, l)))
    return PatternReport(True)


def sliding_exponent_pattern(
    patterns: Sequence[ExponentPattern], eps: int
) -> ExponentPattern:
    """Exponent grid of the sliding matrix built from G_0..G_m grids,
    with the same block layout as :func:`srcodes.convcode.sliding_matrix`."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if not patterns:
        raise ValueError("need at least one pattern")
    n, k = patterns[0].rows, patterns[0].cols
    m = len(patterns) - 1
    cells: list[list[Optional[int]]] = [
        [None] * (k * (eps + 1)) for _ in range(n * (m + eps + 1))
    ]
    for br in range(m + eps + 1):
        for bc in range(eps + 1):
            idx = br - (eps - bc)
            if 0 <= idx <= m:
                block = patterns[idx].cells
                for r in range(n):
                    for c in range(k):
                        cells[n * br + r][k * bc + c] = block[r][c]
    return ExponentPattern(cells)


def field_degree_bound(pattern: ExponentPattern) -> int:
    """Safe extension degree: 1 + the sum over rows of the largest
    exponent in each row (empty rows contribute 0).

    A determinant term uses at most one cell per row, so its exponent
    is at most that sum; any N at or above this bound therefore exceeds
    every exponent a nonzero term can carry.
    """
    total = 0
    for row in pattern.cells:
        live = [c for c in row if c is not None]
        if live:
            total += max(live)
    return 1 + total


def term_exponent(pattern: ExponentPattern, perm: Sequence[int]) -> Optional[int]:
    """Exponent of the determinant term selecting cell (i, perm[i]) in
    each row, or None when the term is trivial (hits a zero cell)."""
    if pattern.rows != pattern.cols or len(perm) != pattern.rows:
        raise ValueError("need a square pattern and a full-length permutation")
    if sorted(perm) != list(range(pattern.rows)):
        raise ValueError("perm is not a permutation")
    total = 0
    for i, j in enumerate(perm):
        beta = pattern.cells[i][j]
        if beta is None:
            return None
        total += beta
    return total


def realize_pattern(pattern: ExponentPattern, field: FieldSpec) -> ExactMatrix:
    """Turn an exponent grid into the matrix of alpha powers over a field."""
    zero = field.zero()
    grid = [
        [zero if c is None else alpha_pow(field, c) for c in row]
        for row in pattern.cells
    ]
    return ExactMatrix(field, grid)


def build_generator(
    n: int,
    k: int,
    indices: Sequence[int],
    mults: Sequence[int],
    field: FieldSpec,
) -> PolyMatrix:
    """Generator matrix of the doubling construction over ``field``.

    Warns when the field degree is below the safe bound for the sliding
    pattern at the certification depth: superregularity of the realized
    matrices is then no longer guaranteed in advance (small-field
    experiments are a legitimate use; certification always re-checks).
    """
    patterns = exponent_pattern(n, k, indices, mults)
    spec = CodeSpec(n, k, tuple(indices), tuple(mults))
    depth = certification_depth(n, k, spec.indices[0], spec.mults[0])
    need = field_degree_bound(sliding_exponent_pattern(patterns, depth))
    if field.N < need:
        warnings.warn(
            f"field degree {field.N} is below the safe bound {need} for this "
            "pattern; superregularity is not guaranteed in advance",
            CertificationFieldWarning,
            stacklevel=2,
        )
    return PolyMatrix(field, [realize_pattern(p, field) for p in patterns])


def check_entry_hypothesis(g: PolyMatrix, spec: CodeSpec) -> tuple[bool, str]:
    """Verify the entry-support hypothesis of the certification route:
    for each j, every entry of the last m_j + ... + m_l columns of G_i
    is nonzero for all i up to the j-th index."""
    prefix = []
    acc = 0
    for m in spec.mults:
        acc += m
        prefix.append(acc)
    for j, nu_j in enumerate(spec.indices):
        first_col = prefix[j - 1] if j > 0 else 0
        for i in range(min(nu_j, g.degree) + 1):
            block = g.coeffs[i]
            for r in range(g.n):
                for s in range(first_col, g.k):
                    if not block.entry(r, s):
                        return False, (
                            f"entry ({r}, {s}) of G_{i} is zero but must be "
                            f"nonzero for index {nu_j}"
                        )
        if nu_j > g.degree:
            return False, f"generator degree {g.degree} is below index {nu_j}"
    return True, ""


def _kernel_vector(
    field: FieldSpec, rows: list[tuple[FieldElement, ...]]
) -> Optional[tuple[FieldElement, ...]]:
    """A nonzero kernel vector of a short fat system (more columns than
    rows), or None when the kernel is trivial on the chosen free column."""
    width = len(rows[0])
    grid = [list(r) for r in rows]
    piv_cols: list[int] = []
    rank = 0
    for c in range(width):
        pr = next((i for i in range(rank, len(grid)) if grid[i][c]), None)
        if pr is None:
            continue
        grid[rank], grid[pr] = grid[pr], grid[rank]
        inv = grid[rank][c].inverse()
        grid[rank] = [inv * x for x in grid[rank]]
        for i in range(len(grid)):
            if i != rank and grid[i][c]:
                f = grid[i][c]
                grid[i] = [x - f * y for x, y in zip(grid[i], grid[rank])]
        piv_cols.append(c)
        rank += 1
    free = [c for c in range(width) if c not in piv_cols]
    if not free:
        return None
    fc = free[0]
    vec = [field.zero()] * width
    vec[fc] = field.one()
    for row_i, c in enumerate(piv_cols):
        vec[c] = -grid[row_i][fc]
    return tuple(vec)


def _achieving_message(
    g: PolyMatrix, spec: CodeSpec, bound: int
) -> Optional[tuple[int, tuple[FieldElement, ...]]]:
    """Search constant messages supported on the first m_1 columns for a
    codeword of weight exactly ``bound``.

    Single columns are tried first, then supports of size 2 up to m_1.
    For a support of size s the message is chosen in the kernel of the
    first s - 1 rows of the stacked coefficient matrix on those columns,
    cancelling s - 1 codeword coordinates; the entry hypothesis makes
    those rows all-nonzero, so the kernel vector is fully nonzero when
    the construction behaves and the resulting weight is minimal.
    """
    import itertools

    field = g.field
    m1 = spec.mults[0]
    nu1 = spec.indices[0]
    one, zero = field.one(), field.zero()
    for size in range(1, m1 + 1):
        for support in itertools.combinations(range(m1), size):
            if size == 1:
                u0 = [zero] * g.k
                u0[support[0]] = one
            else:
                stacked: list[tuple[FieldElement, ...]] = []
                for i in range(nu1 + 1):
                    for r in range(g.n):
                        stacked.append(
                            tuple(g.coeffs[i].entry(r, s) for s in support)
                        )
                kern = _kernel_vector(field, stacked[: size - 1])
                if kern is None or not all(kern):
                    continue
                u0 = [zero] * g.k
                for pos, s in enumerate(support):
                    u0[s] = kern[pos]
            w = codeword_weight(encode(g, [tuple(u0)]))
            if w == bound:
                return w, tuple(u0)
    return None


def certify_optimal(
    n: int,
    k: int,
    indices: Sequence[int],
    mults: Sequence[int],
    field: FieldSpec,
    *,
    budget: int = DEFAULT_MINOR_BUDGET,
    mode: str = "deterministic",
    threads: Optional[int] = None,
    generator: Optional[PolyMatrix] = None,
) -> Certificate:
    """Build (or accept) a generator and certify the code distance.

    The pipeline: verify the entry-support hypothesis and that the
    encoder is column reduced with the requested column degrees, assemble
    the sliding matrix at the certification depth, decide its
    superregularity exactly, and search for a codeword whose weight
    equals the optimal bound.  ``certified_distance`` is filled only when
    both halves succeed.
    """
    spec = CodeSpec(n, k, tuple(indices), tuple(mults))
    if generator is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", CertificationFieldWarning)
            generator = build_generator(n, k, indices, mults, field)
        patterns = exponent_pattern(n, k, indices, mults)
        depth = certification_depth(n, k, spec.indices[0], spec.mults[0])
        need = field_degree_bound(sliding_exponent_pattern(patterns, depth))
        if field.N < need:
            warnings.warn(
                f"certifying over degree {field.N} below the safe bound {need}; "
                "the superregularity check may fail",
                CertificationFieldWarning,
                stacklevel=2,
            )
    else:
        depth = certification_depth(n, k, spec.indices[0], spec.mults[0])

    ok, detail = check_entry_hypothesis(generator, spec)
    if not ok:
        raise HypothesisFailed(detail)
    if column_degrees(generator) != spec.expanded():
        raise HypothesisFailed(
            f"column degrees {column_degrees(generator)} do not match the "
            f"requested profile {spec.expanded()}"
        )
    if not is_column_reduced(generator):
        raise HypothesisFailed("generator is not column reduced")

    report = is_superregular(
        sliding_matrix(generator, depth), mode=mode, budget=budget, threads=threads
    )

    bound = optimal_bound(n, spec.indices[0], spec.mults[0])
    found = _achieving_message(generator, spec, bound)
    achieved = found[0] if found else None

    certified = bound if (report.is_superregular and achieved == bound) else None
    return Certificate(
        spec=spec,
        field=field,
        depth=depth,
        superreg_report=report,
        achieved_weight=achieved,
        certified_distance=certified,
    )


# ---------------------------------------------------------------------------
# randomized small-field search
# ---------------------------------------------------------------------------

_M64 = (1 << 64) - 1


def splitmix64_stream(seed: int) -> Iterator[int]:
    """The documented counter-based RNG: a 64-bit SplitMix sequence with
    constants 0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9, 0x94D049BB133111EB.

    Fixtures produced with a given seed are reproducible across runs and
    implementations.
    """
    state = seed & _M64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _M64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        yield z ^ (z >> 31)


def _profile_of_patterns(
    patterns: Sequence[ExponentPattern],
) -> tuple[int, int, tuple[int, ...], tuple[int, ...]]:
    """Derive (n, k, indices, mults) from the zero structure of the
    coefficient grids: column degree = highest grid with a live cell."""
    n, k = patterns[0].rows, patterns[0].cols
    degs = []
    for s in range(k):
        deg = -1
        for i in range(len(patterns) - 1, -1, -1):
            if any(patterns[i].cells[r][s] is not None for r in range(n)):
                deg = i
                break
        if deg < 0:
            raise ValueError(f"column {s} has no live cell in any grid")
        degs.append(deg)
    distinct = sorted(set(degs))
    return n, k, tuple(distinct), tuple(degs.count(v) for v in distinct)


def search_superregular(
    patterns: Sequence[ExponentPattern],
    field: FieldSpec,
    trials: int,
    seed: int,
    *,
    budget: int = DEFAULT_MINOR_BUDGET,
) -> Optional[PolyMatrix]:
    """Random small-field search for a superregular sliding matrix.

    Only the zero structure of ``patterns`` is used: each trial assigns
    independent uniformly random nonzero field elements to the live cells
    (grids in ascending order, cells row-major, one RNG draw per cell,
    value 1 + draw mod (q-1) mapped through the element index), assembles
    the sliding matrix at the certification depth, and tests it.  Returns
    the first successful generator, or None; deterministic given seed.
    """
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    n, k, indices, mults = _profile_of_patterns(patterns)
    depth = certification_depth(n, k, indices[0], mults[0])
    q = field.order
    if q < 2:
        raise ValueError("field too small")
    stream = splitmix64_stream(seed)
    zero = field.zero()
    for _ in range(trials):
        coeffs = []
        for pat in patterns:
            grid = []
            for row in pat.cells:
                out_row = []
                for cell in row:
                    if cell is None:
                        out_row.append(zero)
                    else:
                        out_row.append(field.from_index(1 + next(stream) % (q - 1)))
                grid.append(out_row)
            coeffs.append(ExactMatrix(field, grid))
        g = PolyMatrix(field, coeffs)
        if is_superregular(sliding_matrix(g, depth), budget=budget).is_superregular:
            return g
    return None


# ---------------------------------------------------------------------------
# field selection
# ---------------------------------------------------------------------------


def verifiable_degree(
    p: int,
    min_degree: int,
    factor_budget: int = DEFAULT_FACTOR_BUDGET,
    max_scan: int = 4096,
) -> int:
    """Smallest N >= min_degree such that p^N - 1 factors within budget
    (so primitivity of alpha is certifiable)."""
    n = max(1, min_degree)
    for candidate in range(n, n + max_scan):
        if factor_with_budget(p**candidate - 1, factor_budget) is not None:
            return candidate
    raise RuntimeError(
        f"no verifiable degree in [{n}, {n + max_scan}); raise the budget"
    )


def certification_field(
    min_degree: int, factor_budget: int = DEFAULT_FACTOR_BUDGET
) -> FieldSpec:
    """Default certification field: characteristic 2 with the smallest
    adequate degree, preferring degrees N with 2^N - 1 prime (then every
    element outside {0, 1} is primitive, so verification is immediate)."""
    for exp in MERSENNE_EXPONENTS:
        if exp >= min_degree:
            return default_field(2, exp)
    return default_field(2, verifiable_degree(2, min_degree, factor_budget))
