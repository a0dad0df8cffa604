"""
Elliptic-curve side: traces from Hecke values, direct counts, and the
bounded search for a short Weierstrass model with matching traces.
"""

import json
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from sympy import primerange

from .config import DEFAULT_COEFF_BOUND, DEFAULT_PRIME_BOUND, MIN_MATCH_PRIMES
from .enums import CheckName, SplitKind
from .exceptions import BadPrimeError, CurveModelError, HasseViolationError, PreconditionError, SpecFormatError
from .imstruct import HeckeValue
from .kernels import legendre_array


logger = logging.getLogger(__name__)

MATCH_FORMAT = 1


@dataclass(frozen=True)
class EllipticAp:
    p: int
    a_p: int

    def within_hasse(self) -> bool:
        return self.a_p * self.a_p <= 4 * self.p


@dataclass(frozen=True, order=True)
class WeierstrassCurve:
    """y^2 = x^3 + Ax + B."""

    A: int
    B: int

    def __post_init__(self) -> None:
        if self.singular_part == 0:
            raise CurveModelError(f"y^2 = x^3 + {self.A}x + {self.B} is singular")

    @property
    def singular_part(self) -> int:
        return 4 * self.A**3 + 27 * self.B**2

    @property
    def discriminant(self) -> int:
        return -16 * self.singular_part

    def is_good(self, p: int) -> bool:
        return p > 3 and self.singular_part % p != 0

    def sort_key(self) -> tuple[int, int, int]:
        return (abs(self.A) + abs(self.B), self.A, self.B)

    def __str__(self) -> str:
        return f"y^2 = x^3 + {self.A}x + {self.B}"


def ap_from_psi(h: HeckeValue) -> EllipticAp:
    """
    Trace of Frobenius of the associated elliptic curve: Tr(psi) at split
    primes, 0 at inert primes.

    Raises:
        HasseViolationError: If a_p^2 > 4p.
    """
    a_p = h.psi.trace() if h.kind is SplitKind.SPLIT else 0
    ap = EllipticAp(h.p, a_p)
    if not ap.within_hasse():
        raise HasseViolationError(
            f"|a_p| = {abs(a_p)} exceeds 2 sqrt(p) at p = {h.p}",
            check=CheckName.HASSE.value,
            p=h.p,
            context={"a_p": a_p},
        )
    return ap


def ec_count(E: WeierstrassCurve, p: int) -> EllipticAp:
    """
    a_p = p + 1 - #E(F_p) by summing the quadratic character of x^3 + Ax + B.

    Raises:
        BadPrimeError: If p divides 6 * disc(E).
    """
    if not E.is_good(p):
        raise BadPrimeError(f"{E} has bad reduction at {p}", p)
    x = np.arange(p, dtype=np.int64)
    values = (x * x % p * x + (E.A % p) * x + E.B) % p
    return EllipticAp(p, -int(np.sum(legendre_array(values, p))))


def _trace_table(p: int) -> np.ndarray:
    """a_p of y^2 = x^3 + ax + b for every residue pair (a, b), shape (p, p)."""
    x = np.arange(p, dtype=np.int64)
    chi = legendre_array(x, p)
    cubes = x * x % p * x % p
    b = np.arange(p, dtype=np.int64)
    table = np.empty((p, p), dtype=np.int64)
    for a in range(p):
        shifted = (cubes + a * x) % p
        table[a] = -chi[(shifted[:, None] + b[None, :]) % p].sum(axis=0)
    return table


def _candidate_traces(A: np.ndarray, B: np.ndarray, p: int, chunk: int = 4096) -> np.ndarray:
    x = np.arange(p, dtype=np.int64)
    cubes = x * x % p * x % p
    out = np.empty(len(A), dtype=np.int64)
    for start in range(0, len(A), chunk):
        a, b = A[start : start + chunk, None] % p, B[start : start + chunk, None] % p
        values = (cubes + a * x + b) % p
        out[start : start + chunk] = -legendre_array(values, p).sum(axis=1)
    return out


def _targets(aps: Iterable[EllipticAp], prime_bound: int) -> list[EllipticAp]:
    return sorted((ap for ap in aps if 3 < ap.p <= prime_bound), key=lambda ap: ap.p)


def _scan(A: np.ndarray, B: np.ndarray, targets: Sequence[EllipticAp]) -> np.ndarray:
    """Mask of candidates agreeing with every target at their common good primes."""
    alive = np.ones(len(A), dtype=bool)
    singular = 4 * A**3 + 27 * B**2
    for ap in targets:
        p = ap.p
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        # Table cost p^3 against direct cost |survivors| * p.
        if idx.size > p * p:
            traces = _trace_table(p)[A[idx] % p, B[idx] % p]
        else:
            traces = _candidate_traces(A[idx], B[idx], p)
        good = singular[idx] % p != 0
        alive[idx] = ~good | (traces == ap.a_p)
        logger.debug("p = %d leaves %d candidates", p, int(alive.sum()))
    return alive


def find_matching_curve(
    aps: Sequence[EllipticAp],
    coeff_bound: int = DEFAULT_COEFF_BOUND,
    prime_bound: int = DEFAULT_PRIME_BOUND,
) -> list[WeierstrassCurve]:
    """
    All y^2 = x^3 + Ax + B with |A|, |B| <= coeff_bound whose traces agree
    with ``aps`` at every common good prime up to ``prime_bound``.

    Small primes are checked first so most candidates are rejected early.
    Survivors come sorted by (|A| + |B|, A, B); an empty list is a
    legitimate outcome.

    Raises:
        PreconditionError: If fewer than 20 primes of data are given.
    """
    targets = _targets(aps, prime_bound)
    if len(targets) < MIN_MATCH_PRIMES:
        raise PreconditionError(f"at least {MIN_MATCH_PRIMES} primes are needed, got {len(targets)}")
    axis = np.arange(-coeff_bound, coeff_bound + 1, dtype=np.int64)
    A, B = (grid.ravel() for grid in np.meshgrid(axis, axis, indexing="ij"))
    nonsingular = 4 * A**3 + 27 * B**2 != 0
    A, B = A[nonsingular], B[nonsingular]
    alive = _scan(A, B, targets)
    survivors = sorted(
        (WeierstrassCurve(int(a), int(b)) for a, b in zip(A[alive], B[alive], strict=True)),
        key=WeierstrassCurve.sort_key,
    )
    if not survivors:
        logger.info("no curve with coefficients up to %d matches %d traces", coeff_bound, len(targets))
    return survivors


def match_candidates(
    candidates: Sequence[WeierstrassCurve], aps: Sequence[EllipticAp], prime_bound: int = DEFAULT_PRIME_BOUND
) -> list[WeierstrassCurve]:
    """The candidates whose traces agree with ``aps``, in the search order."""
    if not candidates:
        return []
    A = np.array([E.A for E in candidates], dtype=np.int64)
    B = np.array([E.B for E in candidates], dtype=np.int64)
    alive = _scan(A, B, _targets(aps, prime_bound))
    return sorted((E for E, keep in zip(candidates, alive, strict=True) if keep), key=WeierstrassCurve.sort_key)


def cross_verify(E: WeierstrassCurve, aps: Iterable[EllipticAp]) -> list[int]:
    """Primes where E is good and its trace differs from the given one."""
    return [ap.p for ap in aps if E.is_good(ap.p) and ec_count(E, ap.p).a_p != ap.a_p]


@dataclass(frozen=True)
class MatchReport:
    """Survivors of one search, with the bounds that produced them."""

    curve: str
    coeff_bound: int
    prime_bound: int
    primes: tuple[int, ...]
    survivors: tuple[WeierstrassCurve, ...]

    @classmethod
    def from_search(
        cls,
        curve: str,
        aps: Sequence[EllipticAp],
        survivors: Sequence[WeierstrassCurve],
        coeff_bound: int,
        prime_bound: int,
    ) -> "MatchReport":
        primes = tuple(ap.p for ap in _targets(aps, prime_bound))
        return cls(curve, coeff_bound, prime_bound, primes, tuple(survivors))

    def to_doc(self) -> dict[str, Any]:
        return {
            "format": MATCH_FORMAT,
            "curve": self.curve,
            "coeff_bound": self.coeff_bound,
            "prime_bound": self.prime_bound,
            "primes": len(self.primes),
            "survivors": [[E.A, E.B] for E in self.survivors],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_doc(), indent=2) + "\n"


def zero_trace_fraction(E: WeierstrassCurve, bound: int = DEFAULT_PRIME_BOUND) -> float:
    """Share of good primes up to ``bound`` with a_p = 0; about 1/2 for CM curves."""
    primes = [p for p in primerange(5, bound + 1) if E.is_good(p)]
    if not primes:
        return 0.0
    return sum(ec_count(E, p).a_p == 0 for p in primes) / len(primes)


def load_candidates(path: str | Path) -> list[WeierstrassCurve]:
    """
    Read candidate curves, one "A B" pair per line.

    Blank lines and lines starting with '#' are ignored.

    Raises:
        SpecFormatError: If a line is not two integers or describes a singular curve.
    """
    curves = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        try:
            A, B = (int(part) for part in parts)
            curves.append(WeierstrassCurve(A, B))
        except (ValueError, CurveModelError) as exc:
            raise SpecFormatError(f"{path}:{lineno}: expected 'A B' for a nonsingular curve, got {line!r}") from exc
    return curves
