"""Independent oracles for the test suite.

Everything here recomputes results by a different route than the library:
Leibniz expansion instead of elimination, explicit divisor enumeration
instead of the Rabin test, per-entry polynomial products instead of
block assembly.  Tests freeze expected values through these oracles, so
the oracles must stay independent of the code paths they check.
"""

from __future__ import annotations

from itertools import permutations, product

from srcodes.exactla import ExactMatrix
from srcodes.gf import FieldSpec


def perm_sign(perm) -> int:
    """Signature of a permutation by counting inversions."""
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv % 2 else 1


def leibniz_det(matrix: ExactMatrix):
    """Determinant as the signed sum over all permutations."""
    n = matrix.rows
    assert n == matrix.cols
    field = matrix.field
    total = field.zero()
    for perm in permutations(range(n)):
        term = field.one()
        for i, j in enumerate(perm):
            term = term * matrix.entry(i, j)
        if perm_sign(perm) < 0:
            term = -term
        total = total + term
    return total


def leibniz_trivial(nonzero_grid, row_set, col_set) -> bool:
    """A minor is trivial iff no permutation hits only nonzero cells."""
    order = len(row_set)
    for perm in permutations(range(order)):
        if all(nonzero_grid[row_set[i]][col_set[perm[i]]] for i in range(order)):
            return False
    return True


def brute_superregular(matrix: ExactMatrix) -> bool:
    """Superregularity by checking every minor via the Leibniz oracle."""
    from itertools import combinations

    nz = [[bool(x) for x in row] for row in matrix.entries]
    for order in range(1, min(matrix.rows, matrix.cols) + 1):
        for rs in combinations(range(matrix.rows), order):
            for cs in combinations(range(matrix.cols), order):
                if leibniz_trivial(nz, rs, cs):
                    continue
                if not leibniz_det(matrix.submatrix(rs, cs)):
                    return False
    return True


def poly_divides(d, f, p) -> bool:
    """Does polynomial d divide f over GF(p)?  Coefficient tuples,
    constant term first, d monic."""
    f = list(f)
    deg_d = len(d) - 1
    for i in range(len(f) - 1, deg_d - 1, -1):
        c = f[i] % p
        if c:
            for j in range(deg_d + 1):
                f[i - deg_d + j] = (f[i - deg_d + j] - c * d[j]) % p
    return all(c % p == 0 for c in f)


def irreducible_by_trial_division(coeffs, p) -> bool:
    """Irreducibility by dividing against all monic polynomials of degree
    up to half the degree of the candidate (desk scale only)."""
    n = len(coeffs) - 1
    if n == 1:
        return True
    for deg in range(1, n // 2 + 1):
        for lower in product(range(p), repeat=deg):
            d = list(lower) + [1]
            if poly_divides(d, coeffs, p):
                return False
    return True


def all_monic_irreducibles(p, n) -> list[tuple[int, ...]]:
    """Every monic irreducible of degree n over GF(p), ascending value."""
    out = []
    for lower in range(p**n):
        digits = []
        v = lower
        for _ in range(n):
            digits.append(v % p)
            v //= p
        coeffs = tuple(digits) + (1,)
        if irreducible_by_trial_division(coeffs, p):
            out.append(coeffs)
    return out


def poly_mul_vectors(field: FieldSpec, g_entry_polys, message_polys):
    """Codeword coefficients of G(z)u(z) via per-entry polynomial products.

    ``g_entry_polys[i][j]`` is the coefficient list of the (i, j) entry;
    ``message_polys[j]`` the coefficient list of u_j.  Returns a list of
    length-n coefficient vectors with trailing zero vectors trimmed.
    """
    n = len(g_entry_polys)
    k = len(g_entry_polys[0])
    zero = field.zero()
    max_len = max(len(g_entry_polys[0][0]), 1) + max(len(message_polys[0]), 1)
    out = [[zero] * n for _ in range(max_len)]
    for i in range(n):
        for j in range(k):
            for a, ga in enumerate(g_entry_polys[i][j]):
                if not ga:
                    continue
                for b, ub in enumerate(message_polys[j]):
                    if ub:
                        out[a + b][i] = out[a + b][i] + ga * ub
    while len(out) > 1 and not any(out[-1]):
        out.pop()
    return [tuple(row) for row in out]
