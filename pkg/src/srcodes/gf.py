"""Exact arithmetic in prime fields GF(p) and extension fields GF(p^N).

Elements are residue classes of polynomials over GF(p) modulo a monic
irreducible polynomial of degree N, stored in the polynomial basis
(coefficient vectors, constant term first).  For p = 2 the coefficient
vector is packed into a single Python int so that fields like GF(2^521)
stay fast; for p > 2 a plain tuple of ints is used.

Every field carries a designated primitive element ``alpha``.  Its order
is verified against a factorization of p^N - 1 obtained by trial division
up to a configurable bound plus a primality test on the cofactor; when
the factorization is out of budget the constructor fails loudly instead
of silently assuming primitivity.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "GFError",
    "NonPrimeP",
    "ReducibleModulus",
    "PrimitivityUnverifiable",
    "ZeroInverse",
    "MixedFields",
    "ElementSyntaxError",
    "FieldElement",
    "FieldSpec",
    "field_create",
    "default_field",
    "alpha_pow",
    "parse_element",
    "element_text",
    "is_probable_prime",
    "factor_with_budget",
    "DEFAULT_FACTOR_BUDGET",
]

DEFAULT_FACTOR_BUDGET = 10**6


class GFError(Exception):
    """Base class for field construction and arithmetic errors."""


class NonPrimeP(GFError):
    """The requested characteristic is not a prime number."""


class ReducibleModulus(GFError):
    """The supplied modulus polynomial is not irreducible over GF(p)."""


class PrimitivityUnverifiable(GFError):
    """p^N - 1 could not be factored within budget and no primitive
    element was supplied, so the order of alpha cannot be certified."""


class ZeroInverse(GFError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class MixedFields(GFError):
    """Operands belong to different fields."""


class ElementSyntaxError(GFError, ValueError):
    """Element text does not match the accepted syntax."""


# ---------------------------------------------------------------------------
# integer primality and factoring
# ---------------------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Deterministic Miller-Rabin witness set for n < 3.3 * 10^24.
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Deterministic below 3.3e24; above that the fixed 25-prime witness set
    makes a false positive astronomically unlikely (ad-hoc composites, not
    adversarial inputs, reach this code).
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        witnesses: Iterable[int] = _SMALL_PRIMES
    else:
        witnesses = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                     53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor_with_budget(n: int, bound: int = DEFAULT_FACTOR_BUDGET) -> Optional[dict[int, int]]:
    """Factor n by trial division up to ``bound`` plus a primality test on
    the cofactor.  Returns {prime: multiplicity}, or None when the
    remaining cofactor is composite and out of reach.
    """
    if n < 1:
        raise ValueError("factor_with_budget expects a positive integer")
    factors: dict[int, int] = {}
    if n == 1:
        return factors
    if is_probable_prime(n):
        return {n: 1}
    for d in (2, 3):
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
    d = 5
    while d <= bound and d * d <= n:
        for step in (d, d + 2):
            while n % step == 0:
                factors[step] = factors.get(step, 0) + 1
                n //= step
        d += 6
    if n == 1:
        return factors
    if d * d > n or is_probable_prime(n):
        # cofactor smaller than bound^2 with no divisor <= bound is prime
        factors[n] = factors.get(n, 0) + 1
        return factors
    return None


# ---------------------------------------------------------------------------
# packed GF(2)[x] helpers (bit i of the int is the coefficient of x^i)
# ---------------------------------------------------------------------------

# byte -> bits interleaved with zeros, so _clsq is a table-driven bit spread
_SQR_TABLE = tuple(
    sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)
)


def _clmul(a: int, b: int) -> int:
    """Carry-less product of two packed GF(2) polynomials."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    acc = 0
    while a:
        low = a & -a
        acc ^= b << (low.bit_length() - 1)
        a ^= low
    return acc


def _clsq(a: int) -> int:
    """Square of a packed GF(2) polynomial (bit spread)."""
    out = 0
    shift = 0
    while a:
        out |= _SQR_TABLE[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return out


def _gf2_reduce(v: int, n: int, mask: int, fold: tuple[int, ...]) -> int:
    """Reduce v modulo the field polynomial, given x^n = sum of x^pos."""
    while v >> n:
        hi = v >> n
        v &= mask
        for pos in fold:
            v ^= hi << pos
    return v


def _gf2_gcd(a: int, b: int) -> int:
    """Greatest common divisor of two packed GF(2) polynomials."""
    while b:
        while a and a.bit_length() >= b.bit_length():
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


def _gf2_inv(a: int, n: int, mask: int, fold: tuple[int, ...], fpacked: int) -> int:
    """Inverse of a nonzero packed element modulo the field polynomial."""
    u, v = a, fpacked
    g1, g2 = 1, 0
    while u != 1:
        if u == 0:
            raise ZeroInverse("element has no inverse (modulus not irreducible?)")
        du, dv = u.bit_length(), v.bit_length()
        if du < dv:
            u, v, g1, g2 = v, u, g2, g1
            du, dv = dv, du
        j = du - dv
        u ^= v << j
        g1 ^= g2 << j
    return _gf2_reduce(g1, n, mask, fold)


def _gf2_irreducible(fpacked: int, n: int) -> bool:
    """Rabin irreducibility test for a packed degree-n polynomial over GF(2)."""
    if n == 1:
        return True
    if not fpacked & 1:  # divisible by x
        return False
    mask = (1 << n) - 1
    fold = tuple(i for i in range(n) if (fpacked >> i) & 1)
    x = 0b10

    def sqr_mod(v: int) -> int:
        return _gf2_reduce(_clsq(v), n, mask, fold)

    # x^(2^n) must equal x
    y = x
    for _ in range(n):
        y = sqr_mod(y)
    if y != x:
        return False
    # gcd(x^(2^(n/t)) - x, f) must be 1 for every prime t | n
    for t in _prime_divisors(n):
        y = x
        for _ in range(n // t):
            y = sqr_mod(y)
        if _gf2_gcd(y ^ x, fpacked) != 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# tuple-based GF(p)[x] helpers for odd characteristic
# ---------------------------------------------------------------------------


def _ptuple_trim(a: Sequence[int]) -> tuple[int, ...]:
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _ptuple_rem(a: Sequence[int], f: Sequence[int], p: int) -> tuple[int, ...]:
    """Remainder of a modulo monic f, coefficients mod p."""
    a = [c % p for c in a]
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _ptuple_trim(a[:df])


def _ptuple_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = (out[i + j] + ca * cb) % p
    return out


def _ptuple_gcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    a = _ptuple_trim(a)
    b = _ptuple_trim(b)
    while b:
        # make b monic, then take remainder
        inv_lead = pow(b[-1], p - 2, p)
        bm = tuple(c * inv_lead % p for c in b)
        a, b = b, _ptuple_rem(a, bm, p)
    return a


def _poly_irreducible(coeffs: Sequence[int], p: int, n: int) -> bool:
    """Rabin irreducibility test over GF(p) for monic degree-n coeffs."""
    if n == 1:
        return True
    if coeffs[0] % p == 0:  # divisible by x
        return False
    f = tuple(c % p for c in coeffs)
    x = (0, 1)

    def pow_p(v: tuple[int, ...]) -> tuple[int, ...]:
        # v^p by square and multiply
        result: tuple[int, ...] = (1,)
        base = v
        e = p
        while e:
            if e & 1:
                result = _ptuple_rem(_ptuple_mul(result, base, p), f, p)
            base = _ptuple_rem(_ptuple_mul(base, base, p), f, p)
            e >>= 1
        return result

    y = x
    for _ in range(n):
        y = pow_p(y)
    if _ptuple_trim(y) != _ptuple_trim(x):
        return False
    for t in _prime_divisors(n):
        y = x
        for _ in range(n // t):
            y = pow_p(y)
        diff = list(y) + [0] * max(0, 2 - len(y))
        diff[1] = (diff[1] - 1) % p
        if len(_ptuple_gcd(diff, f, p)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# field spec and elements
# ---------------------------------------------------------------------------


def _smallest_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n over GF(p).

    Candidates are ordered by the integer value sum(c_i * p^i) of their
    coefficient vector, constant term in the lowest digit; the first
    irreducible wins.  For GF(2), degree 3, this picks x^3 + x + 1.
    """
    if n == 1:
        return (0, 1)
    if p == 2:
        f_high = 1 << n
        t = 1
        while t < f_high:
            if _gf2_irreducible(f_high | t, n):
                return tuple((t >> i) & 1 for i in range(n)) + (1,)
            t += 2  # constant term must be 1
        raise GFError("no irreducible polynomial found")  # unreachable
    t = 1
    limit = p**n
    while t < limit:
        if t % p != 0:
            coeffs = _int_digits(t, p, n) + (1,)
            if _poly_irreducible(coeffs, p, n):
                return coeffs
        t += 1
    raise GFError("no irreducible polynomial found")  # unreachable


def _int_digits(v: int, p: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(v % p)
        v //= p
    return tuple(out)


class FieldElement:
    """Element of a FieldSpec, immutable.

    ``coeffs`` exposes the polynomial-basis coefficient vector.  Arithmetic
    uses the natural operators; operands must share the same field.
    """

    __slots__ = ("field", "val")

    def __init__(self, field: "FieldSpec", val):
        self.field = field
        self.val = val

    @property
    def coeffs(self) -> tuple[int, ...]:
        f = self.field
        if f.p == 2:
            return tuple((self.val >> i) & 1 for i in range(f.N))
        return self.val + (0,) * (f.N - len(self.val))

    def __bool__(self) -> bool:
        return bool(self.val)

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if self.field is not other.field and self.field != other.field:
            raise MixedFields("operands belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        if f.p == 2:
            return FieldElement(f, self.val ^ other.val)
        a, b = self.val, other.val
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % f.p
        return FieldElement(f, _ptuple_trim(out))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __neg__(self) -> "FieldElement":
        f = self.field
        if f.p == 2:
            return self
        return FieldElement(f, tuple((f.p - c) % f.p for c in self.val))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        if f.p == 2:
            return FieldElement(
                f, _gf2_reduce(_clmul(self.val, other.val), f.N, f._mask, f._fold)
            )
        prod = _ptuple_mul(self.val, other.val, f.p)
        return FieldElement(f, _ptuple_rem(prod, f.modulus, f.p))

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse; raises ZeroInverse on zero."""
        f = self.field
        if not self.val:
            raise ZeroInverse("0 has no multiplicative inverse")
        if f.p == 2:
            return FieldElement(f, _gf2_inv(self.val, f.N, f._mask, f._fold, f._fpacked))
        return self ** (f.order - 2)

    def __pow__(self, e: int) -> "FieldElement":
        f = self.field
        if e < 0:
            return self.inverse() ** (-e)
        result = f.one()
        base = self
        if f.p == 2:
            # squaring is cheap for packed elements
            acc = base.val
            r = result.val
            while e:
                if e & 1:
                    r = _gf2_reduce(_clmul(r, acc), f.N, f._mask, f._fold)
                e >>= 1
                if e:
                    acc = _gf2_reduce(_clsq(acc), f.N, f._mask, f._fold)
            return FieldElement(f, r)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.val == other.val

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.N, self.val))

    def __repr__(self) -> str:
        return f"FieldElement({element_text(self)!r}, GF({self.field.p}^{self.field.N}))"


class FieldSpec:
    """The field GF(p^N): characteristic, modulus, and primitive element.

    Instances are immutable after construction and safe to share across
    threads.  Use :func:`field_create` instead of calling this directly.
    """

    __slots__ = (
        "p", "N", "modulus", "alpha", "order", "group_order", "group_factors",
        "_mask", "_fold", "_fpacked", "_hash",
    )

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.N = n
        self.modulus = modulus
        self.order = p**n
        self.group_order = self.order - 1
        self.group_factors: Optional[dict[int, int]] = None
        self.alpha: FieldElement = None  # type: ignore[assignment]  # set by field_create
        if p == 2:
            fpacked = 0
            for i, c in enumerate(modulus):
                fpacked |= (c & 1) << i
            self._fpacked = fpacked
            self._mask = (1 << n) - 1
            self._fold = tuple(i for i in range(n) if (fpacked >> i) & 1)
        else:
            self._fpacked = 0
            self._mask = 0
            self._fold = ()
        self._hash = hash((p, n, modulus))

    # -- constructors for elements ------------------------------------

    def zero(self) -> FieldElement:
        return FieldElement(self, 0 if self.p == 2 else ())

    def one(self) -> FieldElement:
        return FieldElement(self, 1 if self.p == 2 else (1,))

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        """Element from a coefficient vector (constant term first)."""
        if len(coeffs) > self.N:
            raise ValueError(f"coefficient vector longer than N={self.N}")
        if self.p == 2:
            val = 0
            for i, c in enumerate(coeffs):
                val |= (c % 2) << i
            return FieldElement(self, val)
        return FieldElement(self, _ptuple_trim([c % self.p for c in coeffs]))

    def from_index(self, idx: int) -> FieldElement:
        """Element whose coefficient vector is the base-p digits of idx."""
        if not 0 <= idx < self.order:
            raise ValueError("index out of range")
        if self.p == 2:
            return FieldElement(self, idx)
        return FieldElement(self, _ptuple_trim(_int_digits(idx, self.p, self.N)))

    def index_of(self, el: FieldElement) -> int:
        if self.p == 2:
            return el.val
        return sum(c * self.p**i for i, c in enumerate(el.val))

    def elements(self) -> Iterator[FieldElement]:
        """All field elements in index order (intended for small fields)."""
        for idx in range(self.order):
            yield self.from_index(idx)

    # -- misc -----------------------------------------------------------

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.N, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                x = "x" if i == 1 else f"x^{i}"
                terms.append(x if c == 1 else f"{c}{x}")
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return self.p == other.p and self.N == other.N and self.modulus == other.modulus

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FieldSpec(GF({self.p}^{self.N}), modulus={self.modulus_str()})"


def _has_full_order(el: FieldElement, group_order: int, factors: dict[int, int]) -> bool:
    if not el:
        return False
    one = el.field.one()
    if group_order == 1:
        return el == one
    return all(el ** (group_order // q) != one for q in factors)


def field_create(
    p: int,
    n: int,
    modulus: Optional[Sequence[int]] = None,
    *,
    alpha: Optional[Sequence[int] | str] = None,
    factor_budget: int = DEFAULT_FACTOR_BUDGET,
) -> FieldSpec:
    """Create GF(p^n).

    When ``modulus`` is omitted the smallest irreducible monic polynomial
    of degree n over GF(p) (ordered by the integer value of the coefficient
    vector) is chosen.  ``alpha`` defaults to the class of x, replaced by
    the first element of full multiplicative order when x is not primitive;
    primitivity is certified via a factorization of p^n - 1.  A caller who
    supplies ``alpha`` explicitly takes responsibility for its order when
    that factorization is out of budget.
    """
    if not is_probable_prime(p):
        raise NonPrimeP(f"p = {p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")

    if modulus is None:
        mod = _smallest_modulus(p, n)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != n + 1 or mod[-1] == 0:
            raise ReducibleModulus(f"modulus must have degree exactly {n}")
        if mod[-1] != 1:
            # normalize to monic; scaling preserves the quotient ring
            inv_lead = pow(mod[-1], p - 2, p) if p > 2 else 1
            mod = tuple(c * inv_lead % p for c in mod)
        ok = _gf2_irreducible(
            sum((c & 1) << i for i, c in enumerate(mod)), n
        ) if p == 2 else _poly_irreducible(mod, p, n)
        if not ok:
            raise ReducibleModulus(f"polynomial is reducible over GF({p})")

    spec = FieldSpec(p, n, mod)
    spec.group_factors = factor_with_budget(spec.group_order, factor_budget)

    if alpha is not None:
        a = parse_element(spec, alpha) if isinstance(alpha, str) else spec.element(alpha)
        if not a:
            raise ValueError("alpha must be nonzero")
        if spec.group_factors is not None and not _has_full_order(
            a, spec.group_order, spec.group_factors
        ):
            raise ValueError("supplied alpha is not a primitive element")
        spec.alpha = a
        return spec

    if spec.group_factors is None:
        raise PrimitivityUnverifiable(
            f"cannot factor {p}^{n} - 1 within budget {factor_budget}; "
            "supply a primitive element explicitly"
        )

    if n >= 2:
        x = spec.from_index(p)  # the class of x
        if _has_full_order(x, spec.group_order, spec.group_factors):
            spec.alpha = x
            return spec
    for idx in range(1, spec.order):
        el = spec.from_index(idx)
        if _has_full_order(el, spec.group_order, spec.group_factors):
            spec.alpha = el
            return spec
    raise GFError("no primitive element found")  # unreachable for a true field


_DEFAULT_FIELD_CACHE: dict[tuple[int, int], FieldSpec] = {}


def default_field(p: int, n: int) -> FieldSpec:
    """Cached field_create(p, n) with the default modulus and alpha."""
    key = (p, n)
    spec = _DEFAULT_FIELD_CACHE.get(key)
    if spec is None:
        spec = field_create(p, n)
        _DEFAULT_FIELD_CACHE[key] = spec
    return spec


def alpha_pow(field: FieldSpec, e: int) -> FieldElement:
    """alpha^(e mod (p^N - 1)) for an arbitrarily large exponent e >= 0."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if field.group_order == 0:
        return field.one()
    return field.alpha ** (e % field.group_order)


# ---------------------------------------------------------------------------
# element text: "0", "1", "a^<decimal>", "[c0,c1,...,c(N-1)]"
# ---------------------------------------------------------------------------


def parse_element(field: FieldSpec, text: str) -> FieldElement:
    """Parse the element text syntax used by matrix and code documents."""
    t = text.strip()
    if t == "0":
        return field.zero()
    if t == "1":
        return field.one()
    if t.startswith("a^"):
        body = t[2:]
        if not body.isdigit():
            raise ElementSyntaxError(f"bad alpha power {text!r}")
        return alpha_pow(field, int(body))
    if t.startswith("[") and t.endswith("]"):
        body = t[1:-1].strip()
        parts = [s.strip() for s in body.split(",")] if body else []
        if len(parts) != field.N:
            raise ElementSyntaxError(
                f"coefficient vector {text!r} must have exactly {field.N} entries"
            )
        try:
            coeffs = [int(s) for s in parts]
        except ValueError as exc:
            raise ElementSyntaxError(f"bad coefficient vector {text!r}") from exc
        if any(not 0 <= c < field.p for c in coeffs):
            raise ElementSyntaxError(f"coefficients of {text!r} must lie in [0, {field.p})")
        return field.element(coeffs)
    raise ElementSyntaxError(f"unrecognized element text {text!r}")


def element_text(el: FieldElement) -> str:
    """Serialize an element; parse_element round-trips the output."""
    if not el:
        return "0"
    if el == el.field.one():
        return "1"
    return "[" + ",".join(str(c) for c in el.coeffs) + "]"
