"""Polynomial generator matrices and distance bounds for finite-support
convolutional codes.

A rate k/n code is the module of polynomial vectors G(z)u(z) for an
n x k full-column-rank polynomial matrix G(z).  This module covers the
structural side: column degrees, the highest-coefficient matrix and
column-reducedness, the sorted index profile of a column reduced encoder,
the sliding (block-Toeplitz) matrix that maps stacked message
coefficients to stacked codeword coefficients, encoding, Hamming-weight
distance search, and the closed-form distance bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from srcodes.exactla import DimensionMismatch, ExactMatrix, weight
from srcodes.gf import FieldElement, FieldSpec
from srcodes.superreg import BudgetExceeded

__all__ = [
    "PolyMatrix",
    "CodeSpec",
    "Codeword",
    "DistanceResult",
    "ZeroColumn",
    "NotColumnReduced",
    "InvalidSpec",
    "column_degrees",
    "memory",
    "total_memory",
    "highest_coeff_matrix",
    "is_column_reduced",
    "forney_profile",
    "code_degree",
    "sliding_matrix",
    "encode",
    "codeword_weight",
    "distance_up_to",
    "generalized_singleton",
    "optimal_bound",
    "certification_depth",
    "is_mds_profile",
]


class ZeroColumn(ValueError):
    """The generator matrix has an identically zero column."""


class NotColumnReduced(ValueError):
    """The index profile is only canonical for column reduced encoders."""


class InvalidSpec(ValueError):
    """Code parameters violate their structural invariants."""


class PolyMatrix:
    """Generator matrix G(z) stored as coefficient matrices G_0..G_m.

    The trailing coefficient matrix must be nonzero unless m = 0, so the
    stored degree is the actual degree of G(z).
    """

    __slots__ = ("n", "k", "field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Sequence[ExactMatrix]):
        if not coeffs:
            raise ValueError("need at least one coefficient matrix")
        n, k = coeffs[0].rows, coeffs[0].cols
        for g in coeffs:
            if (g.rows, g.cols) != (n, k):
                raise DimensionMismatch("coefficient matrices differ in shape")
            if g.field != field:
                raise DimensionMismatch("coefficient matrix from a different field")
        if len(coeffs) > 1 and coeffs[-1].is_zero():
            raise ValueError("trailing coefficient matrix is zero; trim the degree")
        self.field = field
        self.n = n
        self.k = k
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def entry_poly(self, i: int, j: int) -> tuple[FieldElement, ...]:
        """Coefficients of the (i, j) entry polynomial, ascending degree."""
        return tuple(g.entry(i, j) for g in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"PolyMatrix({self.n}x{self.k}, degree {self.degree}, GF({self.field.p}^{self.field.N}))"


@dataclass(frozen=True)
class CodeSpec:
    """Rate and index profile: n, k, strictly increasing indices with
    positive multiplicities summing to k."""

    n: int
    k: int
    indices: tuple[int, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(v) for v in self.indices))
        object.__setattr__(self, "mults", tuple(int(v) for v in self.mults))
        if not 1 <= self.k < self.n:
            raise InvalidSpec(f"need 1 <= k < n, got k={self.k}, n={self.n}")
        if len(self.indices) != len(self.mults) or not self.indices:
            raise InvalidSpec("indices and multiplicities must pair up")
        if self.indices[0] < 0:
            raise InvalidSpec("indices must be nonnegative")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise InvalidSpec("indices must be strictly increasing")
        if any(m < 1 for m in self.mults):
            raise InvalidSpec("multiplicities must be positive")
        if sum(self.mults) != self.k:
            raise InvalidSpec("multiplicities must sum to k")

    def expanded(self) -> tuple[int, ...]:
        """Column degrees in nondecreasing order (index repeated by
        multiplicity)."""
        out: list[int] = []
        for nu, m in zip(self.indices, self.mults):
            out.extend([nu] * m)
        return tuple(out)


@dataclass(frozen=True)
class Codeword:
    """Codeword coefficient vectors v_0..v_gamma, each of length n."""

    field: FieldSpec
    coeffs: tuple[tuple[FieldElement, ...], ...]


@dataclass(frozen=True)
class DistanceResult:
    value: int
    exhaustive: bool
    checked: int


def column_degrees(g: PolyMatrix) -> tuple[int, ...]:
    """Per-column maximum entry degree; rejects identically zero columns."""
    out = []
    for j in range(g.k):
        deg = -1
        for d in range(g.degree, -1, -1):
            if any(g.coeffs[d].entry(i, j) for i in range(g.n)):
                deg = d
                break
        if deg < 0:
            raise ZeroColumn(f"column {j} of G(z) is identically zero")
        out.append(deg)
    return tuple(out)


def memory(g: PolyMatrix) -> int:
    """Largest column degree."""
    return max(column_degrees(g))


def total_memory(g: PolyMatrix) -> int:
    """Sum of the column degrees."""
    return sum(column_degrees(g))


def highest_coeff_matrix(g: PolyMatrix) -> ExactMatrix:
    """Constant matrix of top-degree coefficients: entry (i, j) is the
    coefficient of z^(deg of column j) in g_ij, zero when g_ij peaks
    lower."""
    degs = column_degrees(g)
    zero = g.field.zero()
    grid = []
    for i in range(g.n):
        row = []
        for j in range(g.k):
            d = degs[j]
            row.append(g.coeffs[d].entry(i, j) if d <= g.degree else zero)
        grid.append(row)
    return ExactMatrix(g.field, grid)


def is_column_reduced(g: PolyMatrix) -> bool:
    """True when the highest-coefficient matrix has full column rank."""
    return highest_coeff_matrix(g).rank() == g.k


def forney_profile(g: PolyMatrix) -> CodeSpec:
    """Sorted distinct column degrees with multiplicities.

    Only canonical for column reduced encoders (the degrees of any two
    equivalent column reduced encoders agree up to permutation), so other
    inputs are rejected.
    """
    if not is_column_reduced(g):
        raise NotColumnReduced("index profile requires a column reduced encoder")
    degs = column_degrees(g)
    distinct = sorted(set(degs))
    return CodeSpec(
        n=g.n,
        k=g.k,
        indices=tuple(distinct),
        mults=tuple(degs.count(v) for v in distinct),
    )


def code_degree(spec: CodeSpec) -> int:
    """Sum of the indices with multiplicity."""
    return sum(nu * m for nu, m in zip(spec.indices, spec.mults))


def sliding_matrix(g: PolyMatrix, eps: int) -> ExactMatrix:
    """Block-Toeplitz matrix of shape n(m+eps+1) x k(eps+1), m = deg G.

    Block (r, c) holds G_(r-(eps-c)): the rightmost block column carries
    G_0..G_m from the top, each block column to the left is shifted one
    block down.  Multiplying by the stacked message coefficients
    (u_eps, ..., u_0) yields the stacked codeword coefficients
    (v_0, ..., v_(m+eps)).
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    m = g.degree
    n, k = g.n, g.k
    zero = g.field.zero()
    block_rows = m + eps + 1
    grid = [[zero] * (k * (eps + 1)) for _ in range(n * block_rows)]
    for br in range(block_rows):
        for bc in range(eps + 1):
            idx = br - (eps - bc)
            if 0 <= idx <= m:
                block = g.coeffs[idx]
                for r in range(n):
                    dst = grid[n * br + r]
                    for c in range(k):
                        dst[k * bc + c] = block.entry(r, c)
    return ExactMatrix(g.field, grid)


def encode(g: PolyMatrix, message: Sequence[Sequence[FieldElement]]) -> Codeword:
    """Multiply G(z) by the message polynomial u(z).

    ``message`` lists the coefficient vectors u_0, u_1, ... (each of
    length k).  Trailing zero coefficient vectors of the product are
    trimmed; the zero codeword is a single zero vector.
    """
    field = g.field
    vecs = [tuple(v) for v in message]
    for v in vecs:
        if len(v) != g.k:
            raise DimensionMismatch(f"message coefficients must have length k={g.k}")
        for x in v:
            if x.field != field:
                raise DimensionMismatch("message over a different field")
    zero = field.zero()
    if not vecs:
        vecs = [(zero,) * g.k]
    out_len = g.degree + len(vecs)
    out: list[list[FieldElement]] = [[zero] * g.n for _ in range(out_len)]
    for d, u_d in enumerate(vecs):
        if not any(u_d):
            continue
        for i, g_i in enumerate(g.coeffs):
            target = out[d + i]
            prod = g_i.mat_vec(u_d)
            for r in range(g.n):
                if prod[r]:
                    target[r] = target[r] + prod[r]
    while len(out) > 1 and not any(out[-1]):
        out.pop()
    return Codeword(field, tuple(tuple(row) for row in out))


def codeword_weight(cw: Codeword) -> int:
    """Total Hamming weight across all coefficient vectors."""
    return sum(weight(v) for v in cw.coeffs)


def distance_up_to(
    g: PolyMatrix,
    max_degree: int,
    budget: int = 10**8,
) -> DistanceResult:
    """Minimum codeword weight over all nonzero messages of degree at
    most ``max_degree``.

    The result is an upper bound on the code distance: no closed-form
    message-degree cap certifies exactness for finite-support codes, so
    exact distance claims must come from a separate lower-bound
    certificate.  Messages are normalized so the first nonzero entry of
    the lowest-degree nonzero coefficient is 1 (scaling preserves
    weight), shrinking the space by a factor of q - 1.  ``exhaustive`` is
    True when the whole degree-bounded space was covered.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    field = g.field
    q = field.order
    slots = g.k * (max_degree + 1)
    if q**slots > budget:
        raise BudgetExceeded(
            f"message space {q}^{slots} exceeds budget {budget}"
        )
    elements = [field.from_index(i) for i in range(q)]
    nonzero = elements[1:]
    zero, one = elements[0], field.one()

    best: Optional[int] = None
    checked = 0
    for lead in range(slots):
        free = slots - lead - 1
        for tail in itertools.product(elements, repeat=free):
            flat = (zero,) * lead + (one,) + tail
            msg = [flat[d * g.k : (d + 1) * g.k] for d in range(max_degree + 1)]
            w = codeword_weight(encode(g, msg))
            checked += 1
            if best is None or w < best:
                best = w
    assert best is not None
    return DistanceResult(value=best, exhaustive=True, checked=checked)


def generalized_singleton(n: int, k: int, delta: int) -> int:
    """(n-k)(floor(delta/k)+1) + delta + 1, the degree-delta distance cap."""
    if not 1 <= k < n:
        raise InvalidSpec(f"need 1 <= k < n, got k={k}, n={n}")
    if delta < 0:
        raise InvalidSpec("delta must be nonnegative")
    return (n - k) * (delta // k + 1) + delta + 1


def optimal_bound(n: int, nu1: int, m1: int) -> int:
    """n(nu1+1) - m1 + 1: the distance cap from the smallest index nu1
    and its multiplicity m1."""
    if m1 < 1:
        raise InvalidSpec("m1 must be at least 1")
    if nu1 < 0:
        raise InvalidSpec("nu1 must be nonnegative")
    return n * (nu1 + 1) - m1 + 1


def certification_depth(n: int, k: int, nu1: int, m1: int) -> int:
    """ceil((n(nu1+1) - m1) / (n-k)) - 1: the sliding depth at which
    superregularity certifies the optimal distance."""
    if not 1 <= k < n:
        raise InvalidSpec(f"need 1 <= k < n, got k={k}, n={n}")
    num = n * (nu1 + 1) - m1
    return -(-num // (n - k)) - 1


def is_mds_profile(spec: CodeSpec) -> bool:
    """True when the index profile is the compact one for its degree:
    xi = k(floor(delta/k)+1) - delta indices of value floor(delta/k) and
    k - xi of value floor(delta/k) + 1.  At that profile the optimal
    distance cap coincides with the generalized Singleton bound."""
    delta = code_degree(spec)
    base = delta // spec.k
    xi = spec.k * (base + 1) - delta
    if xi == spec.k:
        expected = ((base,), (spec.k,))
    else:
        expected = ((base, base + 1), (xi, spec.k - xi))
    return (spec.indices, spec.mults) == expected
