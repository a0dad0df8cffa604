"""
Vectorised point counting over F_q.

Elements of F_q are int64 arrays whose last axis holds the k coordinates in
the power basis of the field modulus. Every counter walks F_q in chunks of
element indices and keeps one representative per Frobenius orbit, weighted
by the orbit size: the fibre over x and over x^p have the same size because
the curves are defined over F_p.
"""

import logging
from collections.abc import Iterator, Sequence
from functools import cache
from typing import TYPE_CHECKING

import numpy as np

from .enums import CurveKind
from .exceptions import FieldError
from .ff import ExtField, count_roots, frobenius_images
from .registry import point_counter


if TYPE_CHECKING:
    from .curves import HyperellipticCurve, PlaneQuartic, SuperellipticCurve


logger = logging.getLogger(__name__)

# p^2 must fit comfortably in int64 together with a few carries.
KERNEL_MAX_PRIME = 2**21
CHUNK = 1 << 16

type Elements = np.ndarray


def power_mod_array(base: np.ndarray, e: int, p: int) -> np.ndarray:
    """Elementwise base^e mod p."""
    result = np.ones_like(base)
    b = base % p
    while e:
        if e & 1:
            result = result * b % p
        b = b * b % p
        e >>= 1
    return result


def legendre_array(a: np.ndarray, p: int) -> np.ndarray:
    """Legendre symbol of each entry of ``a`` modulo an odd prime p."""
    v = power_mod_array(a, (p - 1) // 2, p)
    return np.where(v == p - 1, -1, v)


class VectorField:
    """Array arithmetic in one ``ExtField``."""

    def __init__(self, field: ExtField) -> None:
        if field.p >= KERNEL_MAX_PRIME:
            raise FieldError(f"vectorised kernels need p < 2^21, got {field.p}")
        self.field = field
        self.p = field.p
        self.k = field.k
        self.q = field.q
        self.modulus = np.array(field.modulus, dtype=np.int64)
        self.frobenius_matrix = np.array(frobenius_images(field), dtype=np.int64)
        self.place_values = np.array([self.p**i for i in range(self.k)], dtype=np.int64)

    def decode(self, index: np.ndarray) -> Elements:
        return (index[:, None] // self.place_values) % self.p

    def encode(self, a: Elements) -> np.ndarray:
        return a @ self.place_values

    def zeros(self, shape: tuple[int, ...]) -> Elements:
        return np.zeros((*shape, self.k), dtype=np.int64)

    def scalars(self, shape: tuple[int, ...], c: int) -> Elements:
        out = self.zeros(shape)
        out[..., 0] = c % self.p
        return out

    def mul(self, a: Elements, b: Elements) -> Elements:
        """Product of reduced operands; partial sums stay below k p^2 before the one reduction."""
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        shape = np.broadcast_shapes(a.shape, b.shape)[:-1]
        prod = np.zeros((*shape, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            prod[..., i : i + k] += a[..., i, None] * b
        prod %= p
        for top in range(2 * k - 2, k - 1, -1):
            lead = prod[..., top] % p
            prod[..., top - k : top] -= lead[..., None] * self.modulus[:k]
        return prod[..., :k] % p

    def add(self, a: Elements, b: Elements) -> Elements:
        return (a + b) % self.p

    def sub(self, a: Elements, b: Elements) -> Elements:
        return (a - b) % self.p

    def frobenius(self, a: Elements) -> Elements:
        if self.k == 1:
            return a
        return (a @ self.frobenius_matrix) % self.p

    def conjugate_product(self, a: Elements) -> Elements:
        """Product of the nontrivial Galois conjugates of ``a``; one for k = 1."""
        out = self.scalars(a.shape[:-1], 1)
        image = a
        for _ in range(self.k - 1):
            image = self.frobenius(image)
            out = self.mul(out, image)
        return out

    def norm(self, a: Elements) -> np.ndarray:
        """Norm to F_p, as an integer array."""
        return self.mul(a, self.conjugate_product(a))[..., 0]

    def inverse(self, a: Elements) -> Elements:
        """Inverse via the norm; zero maps to zero."""
        conj = self.conjugate_product(a)
        n = self.mul(a, conj)[..., 0]
        inv_n = power_mod_array(n, self.p - 2, self.p) * (n != 0)
        return conj * inv_n[..., None] % self.p

    def power(self, a: Elements, e: int) -> Elements:
        result = self.scalars(a.shape[:-1], 1)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a: Elements) -> np.ndarray:
        return ~a.any(axis=-1)

    def horner(self, coefficients: Sequence[int], x: Elements) -> Elements:
        """Evaluate an integer polynomial, little-endian, at every element of ``x``."""
        acc = self.zeros(x.shape[:-1])
        for c in reversed(coefficients):
            acc = self.mul(acc, x)
            acc[..., 0] = (acc[..., 0] + c) % self.p
        return acc

    def quadratic_character(self, a: Elements) -> np.ndarray:
        """chi_q(a) = Legendre(N(a)) for odd p."""
        return legendre_array(self.norm(a), self.p)

    def is_power(self, a: Elements, d: int) -> np.ndarray:
        """Whether each nonzero entry is a d-th power in F_q, for d dividing q - 1."""
        if d == 1:
            return np.ones(a.shape[:-1], dtype=bool)
        if (self.p - 1) % d == 0:
            return power_mod_array(self.norm(a), (self.p - 1) // d, self.p) == 1
        image = self.power(a, (self.q - 1) // d)
        return (image[..., 0] == 1) & ~image[..., 1:].any(axis=-1)

    def orbit_chunks(self, chunk: int = CHUNK) -> Iterator[tuple[Elements, np.ndarray]]:
        """Frobenius-orbit representatives of F_q with their orbit sizes."""
        for start in range(0, self.q, chunk):
            index = np.arange(start, min(self.q, start + chunk), dtype=np.int64)
            x = self.decode(index)
            if self.k == 1:
                yield x, np.ones(len(index), dtype=np.int64)
                continue
            keep = np.ones(len(index), dtype=bool)
            fixed = np.ones(len(index), dtype=bool)
            image = x
            for _ in range(self.k - 1):
                image = self.frobenius(image)
                image_index = self.encode(image)
                keep &= index <= image_index
                fixed &= index == image_index
            weights = np.where(fixed, 1, self.k)
            yield x[keep], weights[keep]


@cache
def vector_field(field: ExtField) -> VectorField:
    return VectorField(field)


@point_counter(CurveKind.HYPERELLIPTIC)
class HyperellipticCounter:
    """sum_x (1 + chi(f(x))) plus the points at infinity of y^2 = f(x)."""

    def count(self, curve: "HyperellipticCurve", field: ExtField) -> int:
        vf = vector_field(field)
        total = 0
        for x, weights in vf.orbit_chunks():
            chi = vf.quadratic_character(vf.horner(curve.f, x))
            total += int(np.sum(weights * (1 + chi)))
        if curve.degree == 7:
            return total + 1
        # deg 8: two points when the leading coefficient is a square in F_q, else none.
        lead = curve.f[-1] % vf.p
        chi_lead = legendre_array(np.array([pow(lead, vf.k, vf.p)], dtype=np.int64), vf.p)[0]
        return total + 1 + int(chi_lead)


@point_counter(CurveKind.SUPERELLIPTIC)
class SuperellipticCounter:
    """
    Fibres of y^m = f(x): one point over a root of f, d = gcd(m, q - 1) over a
    nonzero d-th power, none otherwise, plus one point at infinity.
    """

    def count(self, curve: "SuperellipticCurve", field: ExtField) -> int:
        vf = vector_field(field)
        d = int(np.gcd(curve.m, vf.q - 1))
        total = 0
        for x, weights in vf.orbit_chunks():
            values = vf.horner(curve.f, x)
            zero = vf.is_zero(values)
            fibre = np.where(zero, 1, np.where(vf.is_power(values, d), d, 0))
            total += int(np.sum(weights * fibre))
        return total + 1


class FibreRing:
    """
    F_q[y] / (h) for a stack of monic h of one degree e.

    ``h`` has shape (n, e, k) and holds the coefficients of 1, y, ..., y^(e - 1).
    Ring elements have the same shape.
    """

    def __init__(self, vf: VectorField, h: Elements) -> None:
        self.vf = vf
        self.h = h
        self.n, self.e = h.shape[:2]

    def monomial(self, i: int) -> Elements:
        out = self.vf.zeros((self.n, self.e))
        out[:, i, 0] = 1
        return out

    def mul(self, a: Elements, b: Elements) -> Elements:
        vf, p, k, e = self.vf, self.vf.p, self.vf.k, self.e
        prod = np.zeros((self.n, 2 * e - 1, 2 * k - 1), dtype=np.int64)
        for i in range(e):
            for s in range(k):
                prod[:, i : i + e, s : s + k] += a[:, i, s, None, None] * b
        prod %= p
        for top in range(2 * k - 2, k - 1, -1):
            lead = prod[..., top] % p
            prod[..., top - k : top] -= lead[..., None] * vf.modulus[:k]
        prod = prod[..., :k] % p
        for top in range(2 * e - 2, e - 1, -1):
            lead = prod[:, top, None, :] % p
            prod[:, top - e : top] -= vf.mul(lead, self.h)
        return prod[:, :e] % p

    def shift(self, a: Elements) -> Elements:
        """y * a."""
        out = np.zeros_like(a)
        out[:, 1:] = a[:, :-1]
        return self.vf.sub(out, self.vf.mul(a[:, -1, None, :], self.h))

    def y_to_the_p(self) -> Elements:
        """y^p by squaring and shifting along the bits of p."""
        r = self.monomial(1)
        for bit in bin(self.vf.p)[3:]:
            r = self.mul(r, r)
            if bit == "1":
                r = self.shift(r)
        return r

    def y_to_the_q(self) -> Elements:
        """y^q from y^p by k - 1 compositions with the p-th power map."""
        vf = self.vf
        y_p = self.y_to_the_p()
        if vf.k == 1:
            return y_p
        powers = [self.monomial(0), y_p]
        while len(powers) < self.e:
            powers.append(self.mul(powers[-1], y_p))
        stacked = np.stack(powers, axis=1)
        r = y_p
        for _ in range(vf.k - 1):
            # (sum r_i y^i)^p = sum sigma(r_i) (y^p)^i
            images = vf.frobenius(r)
            r = vf.mul(images[:, :, None, :], stacked).sum(axis=1) % vf.p
        return r

    def distinct_roots(self) -> np.ndarray:
        """deg gcd(y^q - y, h), the nullity of multiplication by y^q - y."""
        g = self.y_to_the_q()
        g[:, 1, 0] = (g[:, 1, 0] - 1) % self.vf.p
        columns = [g]
        for _ in range(self.e - 1):
            columns.append(self.shift(columns[-1]))
        return self.e - _batched_rank(self.vf, np.stack(columns, axis=2))


@point_counter(CurveKind.PLANE_QUARTIC)
class PlaneQuarticCounter:
    """
    Fibre-by-fibre count of F(X, Y, Z) = 0.

    ``PlaneQuartic.fibre_form`` gives a model whose fibres h_x(y) = F(x, y, 1)
    all have degree e in y, with e = 3 when possible. Each fibre has
    deg gcd(y^q - y, h_x) distinct roots in F_q, computed for a whole chunk
    of x at once in ``FibreRing``.
    """

    def count(self, curve: "PlaneQuartic", field: ExtField) -> int:
        vf = vector_field(field)
        p = vf.p
        form = curve.fibre_form(p)
        lead_inv = pow(form.leading, p - 2, p)
        # fibre_coeffs[j] is the coefficient of y^j as a polynomial in x.
        fibre_coeffs = [
            [form.terms.get((i, j, 4 - i - j), 0) * lead_inv % p for i in range(5 - j)] for j in range(form.degree)
        ]
        total = 0
        for x, weights in vf.orbit_chunks():
            ring = FibreRing(vf, np.stack([vf.horner(coeffs, x) for coeffs in fibre_coeffs], axis=1))
            total += int(np.sum(weights * ring.distinct_roots()))
        return total + self._points_at_infinity(form.terms, field)

    def _points_at_infinity(self, terms: dict[tuple[int, int, int], int], field: ExtField) -> int:
        # [x : 1 : 0] with F(x, 1, 0) = 0, then [1 : 0 : 0].
        line = [field.scalar(terms.get((i, 4 - i, 0), 0)) for i in range(5)]
        points = count_roots(line)
        if not terms.get((4, 0, 0), 0):
            points += 1
        return points


def _batched_rank(vf: VectorField, matrix: Elements) -> np.ndarray:
    """Rank over F_q of each matrix in a stack of shape (n, rows, cols, k)."""
    n, rows, cols = matrix.shape[:3]
    m = matrix.copy()
    used = np.zeros((n, rows), dtype=bool)
    rank = np.zeros(n, dtype=np.int64)
    batch = np.arange(n)
    for col in range(cols):
        candidates = m[:, :, col, :].any(axis=-1) & ~used
        has_pivot = candidates.any(axis=1)
        pivot = candidates.argmax(axis=1)
        pivot_row = m[batch, pivot]
        inv = vf.inverse(pivot_row[:, col])
        factors = vf.mul(m[:, :, col, :], inv[:, None, :])
        factors[used] = 0
        factors[~has_pivot] = 0
        factors[batch, pivot] = 0
        m = vf.sub(m, vf.mul(factors[:, :, None, :], pivot_row[:, None, :, :]))
        used[batch[has_pivot], pivot[has_pivot]] = True
        rank += has_pivot
    return rank
