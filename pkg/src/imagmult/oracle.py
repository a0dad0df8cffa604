"""
Exhaustive point counts, kept independent of the vectorised kernels.

Elements of F_q are addressed by their index c_0 + c_1 p + c_2 p^2. Products
go through discrete logarithms to a primitive element and sums through the
coordinate digits, so every point of the affine or projective model is
tested against the equation without any polynomial gcd or Frobenius
shortcut.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np
from sympy import primefactors

from .enums import CurveKind
from .exceptions import FieldError
from .ff import ExtField, FieldElement, power
from .registry import point_oracle


if TYPE_CHECKING:
    from .curves import HyperellipticCurve, PlaneQuartic, SuperellipticCurve


# Points tested per block of the plane quartic oracle.
BLOCK_POINTS = 1 << 20


def _is_primitive(g: FieldElement) -> bool:
    order = g.field.q - 1
    return all(power(g, order // r) != g.field.one for r in primefactors(order))


@dataclass(frozen=True)
class LogTables:
    """Discrete logarithm, exponential and digit tables of one field."""

    p: int
    q: int
    exp: np.ndarray
    log: np.ndarray
    digits: np.ndarray
    place_values: np.ndarray

    @classmethod
    def build(cls, field: ExtField) -> "LogTables":
        p, q, k = field.p, field.q, field.k
        g = next((e for e in field.elements() if e and _is_primitive(e)), None)
        if g is None:
            raise FieldError(f"no primitive element found in F_{q}")
        exp = np.empty(q - 1, dtype=np.int64)
        e = field.one
        for j in range(q - 1):
            exp[j] = e.index()
            e = e * g
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        place_values = np.array([p**i for i in range(k)], dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // place_values) % p
        return cls(p, q, exp, log, digits, place_values)

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def scalar(self, c: int) -> int:
        return c % self.p

    def mul(self, a: np.ndarray, b: np.ndarray | int) -> np.ndarray:
        la, lb = self.log[a], self.log[b]
        product = self.exp[(la + lb) % (self.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, product)

    def pow(self, a: np.ndarray, n: int) -> np.ndarray:
        if n == 0:
            return np.ones_like(a)
        la = self.log[a]
        return np.where(la < 0, 0, self.exp[(la * n) % (self.q - 1)])

    def add(self, a: np.ndarray, b: np.ndarray | int) -> np.ndarray:
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.place_values

    def evaluate(self, f: Sequence[int], x: np.ndarray) -> np.ndarray:
        """Horner evaluation of an integer polynomial, little-endian."""
        acc = np.zeros_like(x)
        for c in reversed(f):
            acc = self.add(self.mul(acc, x), self.scalar(c))
        return acc

    def power_counts(self, m: int) -> np.ndarray:
        """How many y in F_q have y^m equal to each element."""
        return np.bincount(self.pow(self.elements, m), minlength=self.q)


@lru_cache(maxsize=16)
def log_tables(field: ExtField) -> LogTables:
    return LogTables.build(field)


@point_oracle(CurveKind.HYPERELLIPTIC)
class HyperellipticOracle:
    def count(self, curve: "HyperellipticCurve", field: ExtField) -> int:
        t = log_tables(field)
        squares = t.power_counts(2)
        affine = int(squares[t.evaluate(curve.f, t.elements)].sum())
        if curve.degree == 7:
            return affine + 1
        # Smooth model at infinity: y^2 = lc.
        return affine + int(squares[t.scalar(curve.f[-1])])


@point_oracle(CurveKind.SUPERELLIPTIC)
class SuperellipticOracle:
    def count(self, curve: "SuperellipticCurve", field: ExtField) -> int:
        t = log_tables(field)
        powers = t.power_counts(curve.m)
        return int(powers[t.evaluate(curve.f, t.elements)].sum()) + 1


@point_oracle(CurveKind.PLANE_QUARTIC)
class PlaneQuarticOracle:
    """Every point of the projective plane over F_q, tested against F."""

    def count(self, curve: "PlaneQuartic", field: ExtField) -> int:
        t = log_tables(field)
        terms = curve.terms
        xs = t.elements
        # F(x, y, 1) = sum_j A_j(x) y^j
        columns = [t.evaluate([terms.get((i, j, 4 - i - j), 0) for i in range(5 - j)], xs) for j in range(5)]
        y_powers = [t.pow(xs, j) for j in range(5)]
        block = max(1, BLOCK_POINTS // t.q)
        points = 0
        for start in range(0, t.q, block):
            digits = np.zeros((min(block, t.q - start), t.q, field.k), dtype=np.int64)
            for a_j, y_j in zip(columns, y_powers, strict=True):
                digits += t.digits[t.mul(a_j[start : start + block, None], y_j[None, :])]
            points += int((~(digits % t.p).any(axis=-1)).sum())
        at_infinity = t.evaluate([terms.get((i, 4 - i, 0), 0) for i in range(5)], xs)
        points += int((at_infinity == 0).sum())
        return points + int(terms.get((4, 0, 0), 0) % t.p == 0)
