"""Tests for finite-field arithmetic and root counting."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import primerange

from imagmult.exceptions import FieldError
from imagmult.ff import (
    ExtField,
    PrimeField,
    count_roots,
    frobenius_images,
    make_ext_field,
    power,
    prime_field,
    quadratic_character,
)
from imagmult.oracle import log_tables


SMALL_FIELDS = [(2, 1), (3, 1), (7, 1), (13, 1), (2, 2), (3, 2), (5, 2), (2, 3), (3, 3), (7, 3)]


def _expand_roots(roots: list[int], p: int) -> list[int]:
    """Coefficients of the product of (x - r) mod p, little-endian."""
    coeffs = [1]
    for r in roots:
        coeffs = [(s - r * c) % p for s, c in zip([0, *coeffs], [*coeffs, 0], strict=True)]
    return coeffs


class TestFieldConstruction:
    """Tests for building F_p and F_{p^k}."""

    def test_deterministic_moduli(self) -> None:
        """Test that the first irreducible modulus in lexicographic order is chosen."""
        assert make_ext_field(3, 2).modulus == (1, 0, 1)
        assert make_ext_field(2, 2).modulus == (1, 1, 1)
        assert make_ext_field(2, 3).modulus == (1, 1, 0, 1)

    def test_field_sizes(self) -> None:
        """Test q = p^k and the element enumeration."""
        field = make_ext_field(5, 3)
        assert field.q == 125
        assert len({e.coords for e in make_ext_field(3, 2).elements()}) == 9

    def test_non_prime_rejected(self) -> None:
        """Test that composite and out-of-range characteristics are rejected."""
        with pytest.raises(FieldError):
            PrimeField(9)
        with pytest.raises(FieldError):
            PrimeField(1)
        with pytest.raises(FieldError):
            make_ext_field(2**31 + 11, 1)

    def test_unsupported_degree(self) -> None:
        """Test that only degrees 1, 2 and 3 are built."""
        with pytest.raises(FieldError):
            make_ext_field(5, 4)

    def test_reducible_modulus_rejected(self) -> None:
        """Test that x^2 + 1 is refused over F_5, where it has roots."""
        with pytest.raises(FieldError):
            ExtField(PrimeField(5), 2, (1, 0, 1))

    def test_p_equal_two_admitted(self) -> None:
        """Test that characteristic 2 fields exist even though characters need odd q."""
        assert make_ext_field(2, 1).q == 2


class TestElementArithmetic:
    """Tests for element operations."""

    def test_every_element_satisfies_x_q_equals_x(self) -> None:
        """Test a^q = a on all of F_9."""
        field = make_ext_field(3, 2)
        for a in field.elements():
            assert power(a, field.q) == a

    def test_inverse(self) -> None:
        """Test a * a^-1 = 1 for every nonzero element of F_25."""
        field = make_ext_field(5, 2)
        for a in field.elements():
            if a:
                assert a * a.inverse() == field.one
                assert (field.one / a) * a == field.one

    def test_zero_has_no_inverse(self) -> None:
        """Test that inverting zero raises."""
        with pytest.raises(ZeroDivisionError):
            make_ext_field(7, 2).zero.inverse()

    def test_mixing_fields_rejected(self) -> None:
        """Test that elements of different fields do not combine."""
        with pytest.raises(FieldError):
            _ = make_ext_field(5, 2).one + make_ext_field(7, 2).one

    def test_frobenius_images_are_linear_map_of_power_p(self) -> None:
        """Test that the Frobenius matrix agrees with a -> a^p on F_{7^3}."""
        field = make_ext_field(7, 3)
        images = frobenius_images(field)
        for index in (1, 8, 50, 123, 342):
            a = field.element_at(index)
            expected = power(a, field.p).coords
            actual = tuple(
                sum(a.coords[j] * images[j][i] for j in range(field.k)) % field.p for i in range(field.k)
            )
            assert actual == expected

    @given(
        st.tuples(*[st.integers(0, 6)] * 3),
        st.tuples(*[st.integers(0, 6)] * 3),
        st.tuples(*[st.integers(0, 6)] * 3),
    )
    def test_ring_laws(self, a: tuple[int, ...], b: tuple[int, ...], c: tuple[int, ...]) -> None:
        """Test commutativity and distributivity in F_{7^3}."""
        field = make_ext_field(7, 3)
        x, y, z = field.element(a), field.element(b), field.element(c)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z


class TestQuadraticCharacter:
    """Tests for the quadratic character of F_q."""

    @pytest.mark.parametrize(("p", "k"), [(3, 1), (5, 2), (7, 1), (3, 3)])
    def test_half_the_units_are_squares(self, p: int, k: int) -> None:
        """Test that exactly (q - 1) / 2 nonzero elements are squares."""
        field = make_ext_field(p, k)
        values = [quadratic_character(a) for a in field.elements()]
        assert values.count(0) == 1
        assert values.count(1) == (field.q - 1) // 2
        assert values.count(-1) == (field.q - 1) // 2

    def test_minus_one(self) -> None:
        """Test that -1 is a square in F_5 but not in F_7."""
        assert quadratic_character(prime_field(5).scalar(-1)) == 1
        assert quadratic_character(prime_field(7).scalar(-1)) == -1

    def test_even_characteristic_rejected(self) -> None:
        """Test that the character refuses even q."""
        with pytest.raises(FieldError):
            quadratic_character(make_ext_field(2, 2).one)


class TestCountRoots:
    """Tests for counting distinct roots of a polynomial over F_q."""

    def test_x_squared_plus_one(self) -> None:
        """Test x^2 + 1 over F_3, F_5 and F_9."""
        for p, k, expected in ((3, 1, 0), (5, 1, 2), (3, 2, 2)):
            field = make_ext_field(p, k)
            assert count_roots([field.one, field.zero, field.one]) == expected

    def test_repeated_root_counted_once(self) -> None:
        """Test that (x - 1)^2 has one distinct root."""
        field = prime_field(5)
        assert count_roots([field.one, field.scalar(-2), field.one]) == 1

    def test_x_q_minus_x_splits(self) -> None:
        """Test that x^3 - x has all of F_3 as roots."""
        field = prime_field(3)
        assert count_roots([field.zero, field.scalar(-1), field.zero, field.one]) == 3

    def test_constant_has_no_roots(self) -> None:
        """Test that a nonzero constant has no roots."""
        assert count_roots([prime_field(11).scalar(4)]) == 0

    def test_zero_polynomial_rejected(self) -> None:
        """Test that the zero polynomial raises."""
        field = prime_field(5)
        with pytest.raises(FieldError):
            count_roots([field.zero, field.zero])

    @settings(max_examples=80, deadline=None)
    @given(
        st.sampled_from(SMALL_FIELDS),
        st.lists(st.tuples(*[st.integers(0, 12)] * 3), min_size=2, max_size=8),
    )
    def test_matches_enumeration(self, pk: tuple[int, int], coeffs: list[tuple[int, ...]]) -> None:
        """Test the root count against evaluating at every element, for coefficients anywhere in F_q."""
        p, k = pk
        field = make_ext_field(p, k)
        f = [field.element(c[:k]) for c in coeffs]
        assume(any(f))
        roots = 0
        for x in field.elements():
            acc = field.zero
            for c in reversed(f):
                acc = acc * x + c
            roots += acc.is_zero()
        assert count_roots(f) == roots

    @pytest.mark.slow
    def test_matches_enumeration_on_large_fields(self) -> None:
        """Test random and fully split F_p-polynomials on every F_{p^2}, F_{p^3} and F_p with 9000 < p < 10^4."""
        rng = np.random.default_rng(20)
        fields = [(p, k) for k in (2, 3) for p in primerange(2, 101) if p**k <= 10_000]
        fields += [(p, 1) for p in primerange(9000, 10_001)]
        for p, k in fields:
            field = make_ext_field(p, k)
            tables = log_tables(field)
            polys = [[int(c) for c in rng.integers(0, p, size=degree + 1)] for degree in (2, 5, 8)]
            polys.append(_expand_roots([int(r) for r in rng.integers(0, p, size=6)], p))
            for f in polys:
                if not any(c % p for c in f):
                    continue
                expected = int((tables.evaluate(f, tables.elements) == 0).sum())
                assert count_roots([field.scalar(c) for c in f]) == expected, (p, k, f)
