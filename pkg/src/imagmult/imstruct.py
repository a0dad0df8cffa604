"""
Imaginary-multiplication structure of L_p.

At a prime inert in M the L-polynomial factors as
(1 + pT^2)(1 - tT^2 + p^2T^4) with |t| <= 2p. At a split prime it is
c(T) * conj(c)(T) for a cubic c over O_M, and the Hecke character value is
w / p where w is the constant term of c up to sign. Floating point only
proposes candidate factors; every accepted identity is checked exactly.
"""

import itertools
import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from .config import DEFAULT_MODULUS_BOUND, MIN_CHARACTER_PRIMES
from .curves import CurveModel, count_upto
from .enums import CheckName, SplitKind
from .exceptions import (
    BadPrimeError,
    MultipleFactorsFoundError,
    NoFactorFoundError,
    NonDivisibleError,
    NormCheckFailedError,
    PreconditionError,
    TheoremViolationError,
)
from .lpoly import LPolynomial, base_change_square, evaluate_roots, int_polymul, shortcut_inert
from .quadfield import ImagQuadField, QuadInt, canonical_generator, class_number, split_type, units


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InertFactorization:
    """L = (1 + pT^2)(1 - tT^2 + p^2T^4) with b = a2 and t = p - b."""

    p: int
    b: int
    t: int

    @property
    def quadratic_factor(self) -> tuple[int, ...]:
        return (1, 0, self.p)

    @property
    def quartic_factor(self) -> tuple[int, ...]:
        return (1, 0, -self.t, 0, self.p * self.p)

    def product(self) -> tuple[int, ...]:
        return tuple(int_polymul(self.quadratic_factor, self.quartic_factor))


@dataclass(frozen=True)
class CubicFactor:
    """
    c(T) = 1 - uT + vT^2 - wT^3 over O_M.

    ``partner`` holds the (u, v, w) rounded independently from the
    complementary roots, so conjugation can be checked rather than assumed.
    """

    u: QuadInt
    v: QuadInt
    w: QuadInt
    p: int
    partner: tuple[QuadInt, QuadInt, QuadInt] | None = field(default=None, compare=False)

    @property
    def field(self) -> ImagQuadField:
        return self.u.field

    @property
    def coefficients(self) -> tuple[QuadInt, ...]:
        one = self.field.element(1)
        return (one, -self.u, self.v, -self.w)

    def conj(self) -> "CubicFactor":
        return CubicFactor(self.u.conj(), self.v.conj(), self.w.conj(), self.p)

    def complement(self) -> "CubicFactor":
        """The factor for the conjugate prime, from the independent rounding when available."""
        if self.partner is None:
            return self.conj()
        u, v, w = self.partner
        return CubicFactor(u, v, w, self.p, partner=(self.u, self.v, self.w))

    def product_with(self, other: "CubicFactor") -> tuple[QuadInt, ...]:
        a, b = self.coefficients, other.coefficients
        zero = self.field.element(0)
        out = [zero] * 7
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return tuple(out)

    def reproduces(self, L: LPolynomial) -> bool:
        """Whether c * conj(c) equals L coefficient by coefficient."""
        product = self.product_with(self.conj())
        return all(z.y == 0 and z.x == a for z, a in zip(product, L.coefficients, strict=True))

    def is_canonical(self) -> bool:
        return self.w.y > 0 or (self.w.y == 0 and self.w.x > 0)


@dataclass(frozen=True)
class HeckeValue:
    p: int
    kind: SplitKind
    psi: QuadInt

    @property
    def ideal_norm(self) -> int:
        return self.p if self.kind is SplitKind.SPLIT else self.p * self.p

    def satisfies_norm(self) -> bool:
        return self.psi.norm() == self.ideal_norm


def check_inert(L: LPolynomial, p: int) -> InertFactorization:
    """
    Verify the inert factorization of L.

    Raises:
        TheoremViolationError: If a1 or a3 is nonzero, |t| > 2p, or the
            product of the two factors does not reproduce L.
    """
    context = {"a1": L.a1, "a2": L.a2, "a3": L.a3}
    if not L.is_even:
        raise TheoremViolationError(
            f"L is not a polynomial in T^2 at inert p = {p}",
            check=CheckName.INERT_FACTORIZATION.value,
            p=p,
            context=context,
        )
    b = L.a2
    t = p - b
    if abs(t) > 2 * p:
        raise TheoremViolationError(
            f"|t| = {abs(t)} exceeds 2p at inert p = {p}",
            check=CheckName.INERT_FACTORIZATION.value,
            p=p,
            context=context | {"t": t},
        )
    factorization = InertFactorization(p, b, t)
    if factorization.product() != L.coefficients:
        raise TheoremViolationError(
            f"(1 + pT^2)(1 - tT^2 + p^2T^4) does not reproduce L at p = {p}",
            check=CheckName.INERT_FACTORIZATION.value,
            p=p,
            context=context | {"t": t},
        )
    return factorization


def check_inert_base_change(L: LPolynomial, factorization: InertFactorization) -> tuple[int, ...]:
    """
    Verify that over F_{p^2} the L-polynomial is (1 + pU)^2 (1 - tU + p^2U^2)^2.

    The double reciprocal root -p is the Frobenius eigenvalue behind psi = -p.

    Raises:
        TheoremViolationError: If the base-changed polynomial differs.
    """
    p, t = factorization.p, factorization.t
    linear = int_polymul((1, p), (1, p))
    quadratic = (1, -t, p * p)
    expected = tuple(int_polymul(linear, int_polymul(quadratic, quadratic)))
    actual = base_change_square(L)
    if actual != expected:
        raise TheoremViolationError(
            f"base change to F_(p^2) does not have the inert shape at p = {p}",
            check=CheckName.INERT_BASE_CHANGE.value,
            p=p,
            context={"expected": list(expected), "actual": list(actual)},
        )
    return actual


def _elementary(roots: Sequence[complex]) -> tuple[complex, complex, complex]:
    a, b, c = roots
    return a + b + c, a * b + a * c + b * c, a * b * c


def _round_factor(M: ImagQuadField, roots: Sequence[complex], p: int) -> CubicFactor:
    e1, e2, e3 = _elementary(roots)
    return CubicFactor(M.round_complex(e1), M.round_complex(e2), M.round_complex(e3), p)


def split_cubic_candidates(L: LPolynomial, M: ImagQuadField) -> list[CubicFactor]:
    """
    Every conjugate pair of cubic factors c over O_M with c * conj(c) = L.

    Every split of the six reciprocal roots into two triples is tried (the
    first root is always placed in the first triple, giving 10 candidates).
    Elementary symmetric functions of a triple are rounded to O_M and the
    resulting cubic is accepted only when c * conj(c) = L holds exactly.
    Each pair is represented by the factor whose w has positive omega
    coordinate. More than one pair verifies when L has a factor that is
    invariant under the units of O_M, such as 1 + pT^2 + p^2T^4 over
    Q(sqrt(-3)); L alone cannot say which pair carries the Hecke character.

    Raises:
        NoFactorFoundError: If no candidate verifies.
    """
    p = L.p
    roots = evaluate_roots(L)
    verified: dict[tuple[tuple[int, int], ...], CubicFactor] = {}
    for rest in itertools.combinations(range(1, 6), 2):
        chosen = (0, *rest)
        others = [i for i in range(6) if i not in chosen]
        candidate = _round_factor(M, [roots[i] for i in chosen], p)
        if not candidate.reproduces(L):
            continue
        complement = _round_factor(M, [roots[i] for i in others], p)
        first, second = (candidate, complement) if candidate.is_canonical() else (complement, candidate)
        if not first.reproduces(L):
            logger.debug("complementary roots at p = %d round to %s, which does not verify", p, first)
            continue
        factor = CubicFactor(first.u, first.v, first.w, p, partner=(second.u, second.v, second.w))
        key = tuple(z.as_tuple() for z in (factor.u, factor.v, factor.w))
        verified.setdefault(key, factor)

    if not verified:
        raise NoFactorFoundError(
            f"L has no conjugate pair of cubic factors over O_M at p = {p}",
            check=CheckName.SPLIT_FACTORIZATION.value,
            p=p,
            context={"coefficients": list(L.coefficients), "d": M.d},
        )
    return sorted(verified.values(), key=lambda f: f.w.as_tuple())


def split_cubic_factor(L: LPolynomial, M: ImagQuadField) -> CubicFactor:
    """
    The cubic factor c over O_M with c * conj(c) = L, when it is unique.

    Raises:
        NoFactorFoundError: If no candidate verifies.
        MultipleFactorsFoundError: If several distinct conjugate pairs verify.
    """
    candidates = split_cubic_candidates(L, M)
    if len(candidates) > 1:
        raise MultipleFactorsFoundError(
            f"{len(candidates)} conjugate pairs of cubic factors verify at p = {L.p}", L.p, candidates
        )
    return candidates[0]


def extract_psi(factorization: CubicFactor | InertFactorization, M: ImagQuadField | None = None) -> HeckeValue:
    """
    Hecke character value from a verified factorization.

    Split primes give psi = w / p with psi * conj(psi) = p. Inert primes give
    psi = -p, read off the (1 + pT^2) factor.

    Raises:
        NonDivisibleError: If p does not divide both coordinates of w.
        NormCheckFailedError: If psi does not have the norm of its prime ideal.
        PreconditionError: If an inert factorization comes without its field.
    """
    p = factorization.p
    if isinstance(factorization, InertFactorization):
        if M is None:
            raise PreconditionError("the field is needed to express an inert Hecke value")
        # the quadratic factor is 1 - psi T^2 with psi = -p
        value = HeckeValue(p, SplitKind.INERT, M.element(-factorization.quadratic_factor[2]))
    else:
        psi = factorization.w.divide(p)
        if psi is None:
            raise NonDivisibleError(
                f"p = {p} does not divide w = {factorization.w}",
                check=CheckName.PSI_NORM.value,
                p=p,
                context={"w": list(factorization.w.as_tuple())},
            )
        value = HeckeValue(p, SplitKind.SPLIT, psi)
    if not value.satisfies_norm():
        raise NormCheckFailedError(
            f"Nm(psi) = {value.psi.norm()} differs from {value.ideal_norm} at p = {p}",
            check=CheckName.PSI_NORM.value,
            p=p,
            context={"psi": list(value.psi.as_tuple())},
        )
    return value


def conjugation_check(psi_p: HeckeValue, psi_pbar: HeckeValue) -> bool:
    """Whether the value at the conjugate prime is the complex conjugate value."""
    return psi_p.p == psi_pbar.p and psi_pbar.psi == psi_p.psi.conj()


@dataclass(frozen=True)
class CharacterConsistencyReport:
    """
    Smallest modulus N for which psi(g) / g depends only on g mod N.

    ``table`` maps (x mod N, y mod N) of a generator g to the unit psi / g.
    """

    modulus: int | None
    table: dict[tuple[int, int], QuadInt]
    consistent: bool
    violations: list[str]
    collisions: int
    primes: tuple[int, ...]

    def predicts(self, value: HeckeValue) -> bool | None:
        """
        Whether the table gives ``value`` at its prime.

        None when there is no modulus, when p divides it, or when the
        residue of the generator has no entry.
        """
        n = self.modulus
        if n is None or n % value.p == 0:
            return None
        g = canonical_generator(value.psi)
        zeta = value.psi.divide(g)
        expected = self.table.get((g.x % n, g.y % n))
        if expected is None or zeta is None:
            return None
        return expected == zeta


def _character_table(
    entries: Sequence[tuple[int, QuadInt, QuadInt]], unit_group: Sequence[QuadInt], n: int
) -> tuple[dict[tuple[int, int], QuadInt], list[str], int]:
    table: dict[tuple[int, int], QuadInt] = {}
    violations: list[str] = []
    collisions = 0
    for p, g, zeta in entries:
        if n % p == 0:
            continue
        for u in unit_group:
            # the associate u*g carries the unit zeta times u inverse
            associate = u * g
            key = (associate.x % n, associate.y % n)
            value = zeta * u.conj()
            seen = table.setdefault(key, value)
            if seen != value:
                violations.append(f"p = {p}: residue {key} maps to {seen} and {value}")
            elif seen is not value:
                collisions += 1
    return table, violations, collisions


def character_consistency(
    values: Sequence[HeckeValue], M: ImagQuadField, n_max: int = DEFAULT_MODULUS_BOUND
) -> CharacterConsistencyReport:
    """
    Search for the smallest modulus on which the split Hecke values form a character.

    Each value psi generates a prime ideal; with g its canonical generator,
    psi / g is a unit. Every associate u*g is entered with value
    (psi / g) / u, so the choice of generator does not matter. Primes
    dividing the candidate modulus are ignored.

    Raises:
        PreconditionError: If h_M != 1 or fewer than 10 split values are given.
    """
    if class_number(M.D).h != 1:
        raise PreconditionError(f"{M} has class number {class_number(M.D).h}; generators may not exist")
    split_values = [v for v in values if v.kind is SplitKind.SPLIT]
    if len(split_values) < MIN_CHARACTER_PRIMES:
        raise PreconditionError(f"at least {MIN_CHARACTER_PRIMES} split values are needed, got {len(split_values)}")

    entries = []
    for value in split_values:
        g = canonical_generator(value.psi)
        zeta = value.psi.divide(g)
        if zeta is None or not zeta.is_unit():
            raise PreconditionError(f"psi = {value.psi} at p = {value.p} is not a generator of norm p")
        entries.append((value.p, g, zeta))
    primes = tuple(p for p, _, _ in entries)

    unit_group = units(M)
    violations: list[str] = []
    for n in range(1, n_max + 1):
        table, violations, collisions = _character_table(entries, unit_group, n)
        if not violations:
            logger.info("split Hecke values are consistent modulo %d (%d collisions)", n, collisions)
            return CharacterConsistencyReport(n, table, True, [], collisions, primes)
    logger.warning("no modulus up to %d makes the split Hecke values consistent", n_max)
    return CharacterConsistencyReport(None, {}, False, violations, 0, primes)


def choose_by_character(candidates: Sequence[CubicFactor], report: CharacterConsistencyReport) -> CubicFactor | None:
    """
    The one candidate whose Hecke value the character table predicts.

    Candidates whose constant term does not give a value of the right norm
    never agree. Returns None unless exactly one candidate agrees.
    """
    agreeing = []
    for factor in candidates:
        try:
            value = extract_psi(factor)
        except TheoremViolationError:
            continue
        if report.predicts(value):
            agreeing.append(factor)
    return agreeing[0] if len(agreeing) == 1 else None


class ShortcutResult(NamedTuple):
    lpoly: LPolynomial
    factorization: InertFactorization
    elapsed_us: int


def shortcut_pipeline(c: CurveModel, M: ImagQuadField, p: int) -> ShortcutResult:
    """
    L-polynomial at an inert prime from N_1 and N_2 only, with its inert check.

    Raises:
        PreconditionError: If p is not inert in M.
        BadPrimeError: If p is bad for ``c``.
        S1NonZeroError: If the count over F_p contradicts the inert shape.
    """
    kind = split_type(M, p).kind
    if kind is not SplitKind.INERT:
        raise PreconditionError(f"the shortcut needs an inert prime; {p} is {kind.value} in {M}")
    if c.is_bad_prime(p):
        raise BadPrimeError(f"{c.name}: {p} is a bad prime", p)
    start = time.perf_counter_ns()
    counts = count_upto(c, p, 2)
    lpoly = shortcut_inert(counts, p)
    factorization = check_inert(lpoly, p)
    elapsed_us = (time.perf_counter_ns() - start) // 1000
    return ShortcutResult(lpoly, factorization, elapsed_us)
