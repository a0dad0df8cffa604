"""
The degree 6 L-polynomial of a genus 3 Jacobian.

L(T) = 1 + a1 T + a2 T^2 + a3 T^3 + p a2 T^4 + p^2 a1 T^5 + p^3 T^6 is
recovered from point counts with Newton's identities; the reciprocal roots
are extracted numerically only to propose candidates, never to decide.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .curves import PointCounts
from .enums import CheckName
from .exceptions import BadPrimeSuspectedError, ImagMultError, NonIntegralCoefficientError, S1NonZeroError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerSums:
    """s_k = p^k + 1 - N_k, the power sums of the reciprocal roots."""

    p: int
    s: tuple[int, ...]

    @classmethod
    def from_counts(cls, pc: PointCounts) -> "PowerSums":
        return cls(pc.p, pc.power_sums())

    def within_weil_bound(self) -> bool:
        return all(s * s <= 36 * self.p**k for k, s in enumerate(self.s, start=1))


@dataclass(frozen=True)
class LPolynomial:
    p: int
    a1: int
    a2: int
    a3: int

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Ascending coefficients of L(T), functional equation included."""
        p = self.p
        return (1, self.a1, self.a2, self.a3, p * self.a2, p * p * self.a1, p**3)

    @property
    def is_even(self) -> bool:
        """Whether L is a polynomial in T^2."""
        return self.a1 == 0 and self.a3 == 0

    def within_bounds(self) -> bool:
        p = self.p
        return self.a1**2 <= 36 * p and abs(self.a2) <= 15 * p and self.a3**2 <= 400 * p**3


def from_counts(pc: PointCounts) -> LPolynomial:
    """
    L-polynomial from N_1, N_2, N_3 by Newton's identities.

    Raises:
        BadPrimeSuspectedError: If the counts break the Weil bound.
        NonIntegralCoefficientError: If a division by 2 or 6 is not exact.
    """
    if len(pc.N) != 3:
        raise ImagMultError(f"three counts are needed, got {len(pc.N)}")
    sums = PowerSums.from_counts(pc)
    if not sums.within_weil_bound():
        raise BadPrimeSuspectedError(f"power sums {sums.s} break the Weil bound at p = {pc.p}", pc.p)
    s1, s2, s3 = sums.s
    e2, r2 = divmod(s1 * s1 - s2, 2)
    e3, r3 = divmod(s1**3 - 3 * s1 * s2 + 2 * s3, 6)
    if r2 or r3:
        raise NonIntegralCoefficientError(f"power sums {sums.s} give non-integral coefficients at p = {pc.p}", pc.p)
    return LPolynomial(pc.p, -s1, e2, -e3)


def evaluate_roots(L: LPolynomial) -> list[complex]:
    """
    The six reciprocal roots of L, in conjugate-paired order.

    Roots of the reversed polynomial come from the companion matrix
    (``numpy.roots``) and are then polished with a few Newton steps.
    Upper half-plane roots come first in each pair, ordered by argument;
    real roots follow in increasing order.
    """
    reversed_coeffs = np.array(L.coefficients, dtype=float)  # descending for the reversed polynomial
    derivative = np.polyder(reversed_coeffs)
    roots = np.roots(reversed_coeffs).astype(complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(3):
            slope = np.polyval(derivative, roots)
            step = np.polyval(reversed_coeffs, roots) / slope
            roots = np.where(np.abs(slope) > 1e-12 * np.abs(roots) ** 5, roots - step, roots)

    scale = math.sqrt(L.p)
    upper = sorted((z for z in roots if z.imag > 1e-9 * scale), key=lambda z: np.angle(z))
    reals = sorted(z.real for z in roots if abs(z.imag) <= 1e-9 * scale)
    paired: list[complex] = []
    for z in upper:
        paired.extend((complex(z), complex(z).conjugate()))
    paired.extend(complex(r) for r in reals)
    if len(paired) != 6:
        logger.debug("unpaired roots for %s, falling back to plain ordering", L)
        return [complex(z) for z in np.sort_complex(roots)]
    return paired


def real_weil_polynomial(L: LPolynomial) -> tuple[int, int, int]:
    """
    (c2, c1, c0) with L(T) = prod (1 - x_i T + pT^2) and x_i the roots of x^3 + c2 x^2 + c1 x + c0.

    Each x_i is alpha + p / alpha for a reciprocal root alpha.
    """
    p = L.p
    return (L.a1, L.a2 - 3 * p, L.a3 - 2 * p * L.a1)


def _sign_at_bound(u: int, v: int, p: int) -> int:
    """Sign of u + v * 2sqrt(p), exactly."""
    su, sv = (u > 0) - (u < 0), (v > 0) - (v < 0)
    if su == sv or sv == 0:
        return su
    if su == 0:
        return sv
    lhs, rhs = u * u, 4 * p * v * v
    if lhs == rhs:
        return 0
    return su if lhs > rhs else sv


def roots_on_circle(L: LPolynomial) -> bool:
    """
    Whether every reciprocal root has |alpha| = sqrt(p), decided in integers.

    Equivalently the real Weil polynomial h has three real roots in
    [-2sqrt(p), 2sqrt(p)]: its discriminant is non-negative and, h being
    real-rooted, h, h' and h'' are non-negative at 2sqrt(p) and alternate
    in sign at -2sqrt(p).
    """
    p = L.p
    b, c, d = real_weil_polynomial(L)
    discriminant = 18 * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * c**3 - 27 * d * d
    if discriminant < 0:
        return False
    # Values at s * B with B = 2sqrt(p) and B^2 = 4p, as (integer part, coefficient of B).
    for s in (1, -1):
        h = (4 * p * b + d, s * (4 * p + c))
        h1 = (12 * p + c, s * 2 * b)
        h2 = (2 * b, s * 6)
        signs = [_sign_at_bound(u, v, p) for u, v in (h, h1, h2)]
        wanted = (1, 1, 1) if s == 1 else (-1, 1, -1)
        if any(sign * w < 0 for sign, w in zip(signs, wanted, strict=True)):
            return False
    return True


def shortcut_inert(pc: PointCounts, p: int) -> LPolynomial:
    """
    L-polynomial at an inert prime from N_1 and N_2 alone.

    At inert primes L is a polynomial in T^2, so a1 = a3 = 0 and
    a2 = -s2 / 2.

    Raises:
        S1NonZeroError: If s1 != 0, which contradicts the inert prediction.
        NonIntegralCoefficientError: If s2 is odd.
    """
    N1, N2 = pc.N[:2]
    s1 = p + 1 - N1
    s2 = p * p + 1 - N2
    if s1 != 0:
        raise S1NonZeroError(
            f"s1 = {s1} at inert p = {p}",
            check=CheckName.SHORTCUT.value,
            p=p,
            context={"N1": N1, "N2": N2},
        )
    if s2 % 2:
        raise NonIntegralCoefficientError(f"s2 = {s2} is odd at p = {p}", p)
    return LPolynomial(p, 0, -s2 // 2, 0)


def int_polymul(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Product of two ascending integer polynomials, in exact integers."""
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def base_change_square(L: LPolynomial) -> tuple[int, ...]:
    """
    Ascending coefficients of the L-polynomial over F_{p^2}.

    L(T) L(-T) = L2(T^2), so L2 is read off the even coefficients.
    """
    c = L.coefficients
    twisted = [(-1) ** i * a for i, a in enumerate(c)]
    return tuple(int_polymul(c, twisted)[::2])
