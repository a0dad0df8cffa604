"""Tests for the vectorised finite-field kernels."""

import numpy as np
import pytest
from sympy import primerange

from imagmult.exceptions import FieldError
from imagmult.ff import ExtField, FieldElement, count_roots, make_ext_field, power, quadratic_character
from imagmult.kernels import (
    FibreRing,
    VectorField,
    _batched_rank,
    legendre_array,
    power_mod_array,
    vector_field,
)


def _all(vf: VectorField) -> np.ndarray:
    return vf.decode(np.arange(vf.q, dtype=np.int64))


def _from_roots(field: ExtField, roots: list[FieldElement]) -> list[FieldElement]:
    """Little-endian coefficients of the product of (y - r), leading 1 included."""
    coeffs = [field.one]
    for r in roots:
        shifted = [field.zero, *coeffs]
        padded = [*coeffs, field.zero]
        coeffs = [s - r * c for s, c in zip(shifted, padded, strict=True)]
    return coeffs


class TestVectorField:
    """Tests that array arithmetic agrees with the scalar field."""

    @pytest.mark.parametrize(("p", "k"), [(5, 1), (3, 2), (5, 2), (3, 3)])
    def test_mul_matches_scalar(self, p: int, k: int) -> None:
        """Test products of every pair of elements against ``FieldElement``."""
        field = make_ext_field(p, k)
        vf = vector_field(field)
        elements = _all(vf)
        products = vf.mul(elements[:, None, :], elements[None, :, :])
        for i in range(vf.q):
            for j in range(vf.q):
                expected = (field.element_at(i) * field.element_at(j)).coords
                assert tuple(products[i, j]) == expected

    def test_frobenius_and_norm(self) -> None:
        """Test that Frobenius is a -> a^p and the norm lies in F_p on F_{5^3}."""
        field = make_ext_field(5, 3)
        vf = vector_field(field)
        elements = _all(vf)
        images = vf.frobenius(elements)
        for index in range(0, vf.q, 7):
            assert tuple(images[index]) == power(field.element_at(index), 5).coords
        full = vf.mul(elements, vf.conjugate_product(elements))
        assert not full[:, 1:].any()
        assert np.array_equal(vf.norm(elements), full[:, 0])

    def test_inverse(self) -> None:
        """Test that a * a^-1 = 1 for every nonzero element of F_49."""
        vf = vector_field(make_ext_field(7, 2))
        elements = _all(vf)[1:]
        products = vf.mul(elements, vf.inverse(elements))
        assert np.all(products[:, 0] == 1)
        assert not products[:, 1:].any()

    def test_quadratic_character_matches_scalar(self) -> None:
        """Test the norm-based character against Euler's criterion in F_27."""
        field = make_ext_field(3, 3)
        vf = vector_field(field)
        chi = vf.quadratic_character(_all(vf))
        assert [int(c) for c in chi] == [quadratic_character(e) for e in field.elements()]

    @pytest.mark.parametrize(("p", "k", "d"), [(7, 1, 3), (7, 2, 3), (5, 2, 4), (2, 2, 3)])
    def test_is_power(self, p: int, k: int, d: int) -> None:
        """Test the d-th power test against the set of d-th powers."""
        field = make_ext_field(p, k)
        vf = vector_field(field)
        powers = {power(e, d).coords for e in field.elements() if e}
        elements = _all(vf)[1:]
        flags = vf.is_power(elements, d)
        for element, flag in zip(elements, flags, strict=True):
            assert bool(flag) == (tuple(element) in powers)

    @pytest.mark.parametrize(("p", "k"), [(7, 1), (5, 2), (3, 3), (11, 3)])
    def test_orbit_weights_cover_the_field(self, p: int, k: int) -> None:
        """Test that orbit representatives weighted by orbit size count every element once."""
        vf = vector_field(make_ext_field(p, k))
        total = sum(int(weights.sum()) for _, weights in vf.orbit_chunks(chunk=97))
        assert total == vf.q

    def test_horner(self) -> None:
        """Test polynomial evaluation at every element of F_7."""
        vf = vector_field(make_ext_field(7, 1))
        values = vf.horner([1, -1, 0, 0, 1], _all(vf))
        assert [int(v) for v in values[:, 0]] == [(x**4 - x + 1) % 7 for x in range(7)]

    def test_large_prime_rejected(self) -> None:
        """Test that primes beyond the int64-safe range are refused."""
        with pytest.raises(FieldError):
            VectorField(make_ext_field(2_097_169, 1))

    def test_power_is_frobenius(self) -> None:
        """Test a^p = Frobenius(a) and a^q = a on F_{3^3}."""
        vf = vector_field(make_ext_field(3, 3))
        elements = _all(vf)
        assert np.array_equal(vf.power(elements, 3), vf.frobenius(elements))
        assert np.array_equal(vf.power(elements, vf.q), elements)

    @pytest.mark.slow
    def test_frobenius_identity_on_every_field(self) -> None:
        """Test a^q = a and a^p = Frobenius(a) for every element of every F_q with q <= 10^4."""
        fields = 0
        for k in (1, 2, 3):
            for p in primerange(2, 10_001):
                if p**k > 10_000:
                    break
                vf = vector_field(make_ext_field(p, k))
                elements = _all(vf)
                assert np.array_equal(vf.power(elements, vf.q), elements), (p, k)
                assert np.array_equal(vf.power(elements, p), vf.frobenius(elements)), (p, k)
                fields += 1
        assert fields == 1229 + 25 + 8

    def test_scalar_frobenius_identity(self) -> None:
        """Test a^q = a with the scalar field arithmetic on every F_q with q <= 300."""
        for k in (1, 2, 3):
            for p in primerange(2, 301):
                if p**k > 300:
                    break
                field = make_ext_field(p, k)
                assert all(power(e, field.q) == e for e in field.elements()), (p, k)


class TestHelpers:
    """Tests for the elementwise helpers and the batched rank."""

    def test_power_mod_array(self) -> None:
        """Test elementwise modular powers."""
        base = np.arange(11, dtype=np.int64)
        assert [int(v) for v in power_mod_array(base, 5, 11)] == [pow(b, 5, 11) for b in range(11)]

    def test_legendre_array(self) -> None:
        """Test the Legendre symbol modulo 7."""
        assert [int(v) for v in legendre_array(np.arange(7, dtype=np.int64), 7)] == [0, 1, 1, -1, 1, -1, -1]

    def test_batched_rank(self) -> None:
        """Test ranks of a stack of matrices over F_5."""
        vf = vector_field(make_ext_field(5, 1))
        matrices = np.array(
            [
                [[1, 0], [0, 1]],
                [[1, 2], [2, 4]],
                [[0, 0], [0, 0]],
                [[0, 3], [0, 1]],
            ],
            dtype=np.int64,
        )[..., None]
        assert [int(r) for r in _batched_rank(vf, matrices)] == [2, 1, 0, 1]


class TestFibreRing:
    """Tests for root counts of stacks of monic fibres."""

    @pytest.mark.parametrize(
        ("p", "k", "e"), [(5, 1, 3), (7, 1, 4), (2, 2, 3), (3, 2, 4), (5, 2, 3), (3, 3, 4), (2, 3, 3)]
    )
    def test_random_fibres_match_scalar(self, p: int, k: int, e: int) -> None:
        """Test deg gcd(y^q - y, h) against the scalar gcd for random monic h."""
        field = make_ext_field(p, k)
        vf = vector_field(field)
        rng = np.random.default_rng(100 * p + 10 * k + e)
        h = rng.integers(0, p, size=(60, e, k), dtype=np.int64)
        counts = FibreRing(vf, h).distinct_roots()
        for row, count in zip(h, counts, strict=True):
            coeffs = [field.element_at(int(i)) for i in vf.encode(row)] + [field.one]
            assert int(count) == count_roots(coeffs)

    @pytest.mark.parametrize(("p", "k"), [(5, 1), (3, 2), (2, 3), (7, 2)])
    def test_fibres_with_known_roots(self, p: int, k: int) -> None:
        """Test products of linear factors, repeated roots counted once."""
        field = make_ext_field(p, k)
        vf = vector_field(field)
        a, b, c, d = (field.element_at(i) for i in (1, 2, 3, field.q - 1))
        cases = [([a, b, c, d], 4), ([a, a, b, c], 3), ([a, a, b, b], 2), ([d, d, d, d], 1)]
        h = np.array([[list(z.coords) for z in _from_roots(field, roots)[:-1]] for roots, _ in cases], dtype=np.int64)
        assert [int(n) for n in FibreRing(vf, h).distinct_roots()] == [n for _, n in cases]

    def test_irreducible_cubic_has_no_roots(self) -> None:
        """Test y^3 - y - 1 over F_3, then over F_9 where it still has no root."""
        for k in (1, 2):
            vf = vector_field(make_ext_field(3, k))
            h = vf.zeros((1, 3))
            h[0, 0, 0] = 2
            h[0, 1, 0] = 2
            assert int(FibreRing(vf, h).distinct_roots()[0]) == 0

    def test_mul_and_shift_agree(self) -> None:
        """Test that y * a by shifting equals the ring product with y."""
        vf = vector_field(make_ext_field(5, 2))
        rng = np.random.default_rng(7)
        ring = FibreRing(vf, rng.integers(0, 5, size=(30, 4, 2), dtype=np.int64))
        a = rng.integers(0, 5, size=(30, 4, 2), dtype=np.int64)
        assert np.array_equal(ring.shift(a), ring.mul(a, ring.monomial(1)))
