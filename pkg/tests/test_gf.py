"""Field construction and arithmetic."""

from __future__ import annotations

import random

import pytest

from oracles import all_monic_irreducibles, irreducible_by_trial_division
from srcodes import gf


def powers_of(el, count):
    out = []
    acc = el.field.one()
    for _ in range(count):
        acc = acc * el
        out.append(acc)
    return out


class TestFieldCreate:
    def test_gf2_prime_field(self):
        f = gf.field_create(2, 1)
        assert f.modulus == (0, 1)
        assert f.alpha == f.one()  # the unit group of GF(2) is trivial

    def test_gf8_smallest_modulus_and_primitive_x(self):
        # oracle: the two monic degree-3 irreducibles over GF(2), by value
        irr = all_monic_irreducibles(2, 3)
        assert irr == [(1, 1, 0, 1), (1, 0, 1, 1)]
        f = gf.field_create(2, 3)
        assert f.modulus == irr[0]  # x^3 + x + 1
        x = f.element([0, 1, 0])
        assert f.alpha == x
        seen = powers_of(x, 7)
        assert seen[-1] == f.one() and f.one() not in seen[:-1]  # order exactly 7

    def test_reducible_modulus_rejected(self):
        with pytest.raises(gf.ReducibleModulus):
            gf.field_create(2, 3, [0, 0, 0, 1])  # x^3 = x * x * x

    def test_wrong_degree_modulus_rejected(self):
        with pytest.raises(gf.ReducibleModulus):
            gf.field_create(2, 3, [1, 1, 1])

    def test_nonprime_p(self):
        with pytest.raises(gf.NonPrimeP):
            gf.field_create(4, 1)
        with pytest.raises(gf.NonPrimeP):
            gf.field_create(1, 2)

    @pytest.mark.parametrize("p,n", [(2, 2), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
    def test_default_modulus_is_smallest_irreducible(self, p, n):
        f = gf.default_field(p, n)
        assert irreducible_by_trial_division(f.modulus, p)
        assert f.modulus == all_monic_irreducibles(p, n)[0]

    def test_supplied_nonmonic_modulus_normalized(self):
        # 2x^2 + 2 over GF(3) is 2(x^2 + 1); the quotient ring is the same
        f = gf.field_create(3, 2, [2, 0, 2])
        assert f.modulus == (1, 0, 1)

    def test_supplied_alpha_verified_when_possible(self):
        with pytest.raises(ValueError, match="not a primitive"):
            gf.field_create(2, 2, alpha="1")

    def test_alpha_replaced_when_x_not_primitive(self):
        # in GF(9) with modulus x^2 + 1 the class of x has order 4, not 8
        f = gf.field_create(3, 2)
        assert f.modulus == (1, 0, 1)
        x = f.element([0, 1])
        assert (x ** 4) == f.one()
        assert f.alpha != x
        walk = powers_of(f.alpha, 8)
        assert walk[-1] == f.one() and f.one() not in walk[:-1]


class TestArithmetic:
    def test_char2_self_add_is_zero(self):
        f = gf.default_field(2, 3)
        a = f.alpha
        assert a + a == f.zero()

    def test_inv_of_one(self):
        for f in (gf.default_field(2, 1), gf.default_field(5, 1), gf.default_field(2, 4)):
            assert f.one().inverse() == f.one()

    def test_gf8_alpha_times_alpha_squared(self):
        # reduce x^3 by x^3 + x + 1: x^3 = x + 1
        f = gf.default_field(2, 3)
        a = f.alpha
        assert (a * (a * a)).coeffs == (1, 1, 0)

    def test_zero_inverse_raises(self):
        f = gf.default_field(3, 2)
        with pytest.raises(gf.ZeroInverse):
            f.zero().inverse()

    def test_mixed_fields_rejected(self):
        a = gf.default_field(2, 3).one()
        b = gf.default_field(2, 2).one()
        with pytest.raises(gf.MixedFields):
            _ = a + b

    def test_sub_and_pow_consistency(self):
        f = gf.default_field(7, 1)
        a = f.from_index(3)
        assert a - a == f.zero()
        assert a ** 0 == f.one()
        assert a ** -1 == a.inverse()
        assert a ** 6 == f.one()  # group order


def _law_fields():
    """Every field with at most 64 elements."""
    out = []
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61):
        n = 1
        while p**n <= 64:
            out.append((p, n))
            n += 1
    return out


@pytest.mark.parametrize("p,n", _law_fields())
def test_field_laws(p, n):
    """Associativity, commutativity, distributivity, inverses: exhaustive
    over pairs; triples exhaustive up to 16 elements, seeded samples above."""
    f = gf.default_field(p, n)
    els = list(f.elements())
    q = len(els)
    one, zero = f.one(), f.zero()
    for a in els:
        assert a + zero == a and a * one == a
        assert a + (-a) == zero
        if a:
            assert a * a.inverse() == one
    for a in els:
        for b in els:
            assert a + b == b + a
            assert a * b == b * a
    if q <= 16:
        triples = [(a, b, c) for a in els for b in els for c in els]
    else:
        rng = random.Random(1009 * p + n)
        triples = [
            (els[rng.randrange(q)], els[rng.randrange(q)], els[rng.randrange(q)])
            for _ in range(2000)
        ]
    for a, b, c in triples:
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


class TestAlphaPow:
    def test_exponent_zero_is_one(self):
        for f in (gf.default_field(2, 1), gf.default_field(2, 3), gf.default_field(3, 2)):
            assert gf.alpha_pow(f, 0) == f.one()

    def test_group_order_exponent_is_one(self):
        for f in (gf.default_field(2, 3), gf.default_field(5, 1), gf.default_field(2, 31)):
            assert gf.alpha_pow(f, f.group_order) == f.one()

    def test_gf8_exponent_nine_wraps(self):
        f = gf.default_field(2, 3)
        by_mul = f.one()
        for _ in range(9):
            by_mul = by_mul * f.alpha  # repeated multiplication oracle
        assert gf.alpha_pow(f, 9) == by_mul == f.alpha * f.alpha

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            gf.alpha_pow(gf.default_field(2, 3), -1)

    @pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (2, 31), (2, 61)])
    def test_additivity_over_seeded_big_exponents(self, p, n):
        f = gf.default_field(p, n)
        rng = random.Random(20_000 + p * 100 + n)
        for _ in range(100):
            e1 = rng.randrange(0, 1 << 64)
            e2 = rng.randrange(0, 1 << 64)
            assert gf.alpha_pow(f, e1) * gf.alpha_pow(f, e2) == gf.alpha_pow(f, e1 + e2)


def _order_walk_fields():
    """Covering family for the exhaustive alpha-order walk: every prime
    power with n >= 2 up to 2^16 (p <= 31), prime fields up to 257, and
    the largest prime below 2^16."""
    out = []
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        n = 2
        while p**n <= 1 << 16:
            out.append((p, n))
            n += 1
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
              61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127,
              131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
              193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257):
        out.append((p, 1))
    out.append((65521, 1))
    return out


@pytest.mark.parametrize("p,n", _order_walk_fields())
def test_alpha_has_full_multiplicative_order(p, n):
    f = gf.default_field(p, n)
    acc = f.alpha
    steps = 1
    one = f.one()
    while acc != one:
        acc = acc * f.alpha
        steps += 1
        assert steps <= f.group_order
    assert steps == f.group_order


class TestPrimitivityBudget:
    def test_unverifiable_without_alpha(self):
        # 2^101 - 1 has two large prime factors beyond the trial bound
        with pytest.raises(gf.PrimitivityUnverifiable):
            gf.field_create(2, 101)

    def test_supplied_alpha_accepted_beyond_budget(self):
        f = gf.field_create(2, 101, alpha=[0, 1] + [0] * 99)
        assert f.group_factors is None
        assert f.alpha == f.element([0, 1] + [0] * 99)

    def test_mersenne_factorization(self):
        f = gf.default_field(2, 31)
        assert f.group_factors == {2**31 - 1: 1}


class TestFactorHelpers:
    def test_factor_small(self):
        assert gf.factor_with_budget(1) == {}
        assert gf.factor_with_budget(360) == {2: 3, 3: 2, 5: 1}

    def test_factor_reconstructs(self):
        n = 2**57 - 1
        factors = gf.factor_with_budget(n)
        assert factors is not None
        prod = 1
        for q, e in factors.items():
            prod *= q**e
            # independent Fermat checks on each declared prime
            assert all(pow(a, q - 1, q) == 1 for a in (2, 3, 5, 7) if a % q)
        assert prod == n

    def test_factor_gives_up_honestly(self):
        assert gf.factor_with_budget(2**101 - 1, bound=10**5) is None

    def test_is_probable_prime_agrees_with_sieve(self):
        sieve = [True] * 2000
        sieve[0] = sieve[1] = False
        for i in range(2, 45):
            if sieve[i]:
                for j in range(i * i, 2000, i):
                    sieve[j] = False
        for v in range(2000):
            assert gf.is_probable_prime(v) == sieve[v]


class TestElementText:
    def test_parse_fixed_forms(self):
        f = gf.default_field(2, 3)
        assert gf.parse_element(f, "0") == f.zero()
        assert gf.parse_element(f, "1") == f.one()
        assert gf.parse_element(f, "a^2") == f.alpha * f.alpha
        assert gf.parse_element(f, "[1,1,0]") == f.one() + f.alpha

    def test_roundtrip_all_elements(self):
        for f in (gf.default_field(2, 3), gf.default_field(3, 2), gf.default_field(5, 1)):
            for el in f.elements():
                assert gf.parse_element(f, gf.element_text(el)) == el

    @pytest.mark.parametrize("bad", ["", "a^", "a^x", "[1,2]", "[1,1,1,1]", "2", "alpha", "[1, a]"])
    def test_parse_rejects_bad_text(self, bad):
        f = gf.default_field(2, 3)
        with pytest.raises(gf.ElementSyntaxError):
            gf.parse_element(f, bad)

    def test_coeff_vector_length_must_match(self):
        f = gf.default_field(3, 2)
        with pytest.raises(gf.ElementSyntaxError):
            gf.parse_element(f, "[1]")
        assert gf.parse_element(f, "[2,1]").coeffs == (2, 1)
