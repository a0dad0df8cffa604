"""
Per-prime verification of one curve and the ordered worker pool around it.

Every identity check records a verdict. A failed check is a theorem
violation: it is collected on the record and never aborts the run.
"""

import logging
import time
import warnings
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Unpack

from sympy import primerange

from .config import DEFAULT_PRIME_BOUND, Settings
from .curves import CurveModel, count_triple, count_upto
from .ecmatch import ap_from_psi
from .enums import CheckName, SplitKind, Verdict
from .exceptions import (
    BadPrimeError,
    BadPrimeSuspectedError,
    NonIntegralCoefficientError,
    PreconditionError,
    S1NonZeroError,
    TheoremViolationError,
)
from .imstruct import (
    CubicFactor,
    character_consistency,
    check_inert,
    check_inert_base_change,
    choose_by_character,
    conjugation_check,
    extract_psi,
    split_cubic_candidates,
)
from .lpoly import LPolynomial, from_counts, roots_on_circle, shortcut_inert
from .quadfield import ImagQuadField, class_number, class_number_bound_check, split_type
from .records import ResultRecord
from .specfile import CurveSpec
from .types import RunArgs


logger = logging.getLogger(__name__)

SPLIT_CHECKS = (
    CheckName.SPLIT_FACTORIZATION,
    CheckName.PSI_NORM,
    CheckName.CONJUGATION,
    CheckName.HASSE,
)


@dataclass(frozen=True)
class PrimeOutcome:
    p: int
    record: ResultRecord | None
    elapsed_us: int
    skipped: str | None = None


@dataclass
class RunResult:
    records: list[ResultRecord] = field(default_factory=list)
    timings: list[tuple[int, int]] = field(default_factory=list)
    skipped: dict[int, str] = field(default_factory=dict)

    @property
    def violations(self) -> list[dict]:
        return [v for record in self.records for v in record.violations]


class _Checks:
    """Runs checks in order; once one fails, the checks depending on it are skipped."""

    def __init__(self, record: ResultRecord, curve: CurveModel) -> None:
        self.record = record
        self.curve = curve
        self.blocked = False

    def run[T](self, name: CheckName, check: Callable[[], T]) -> T | None:
        if self.blocked:
            self.record.checks[name.value] = Verdict.SKIPPED
            return None
        try:
            result = check()
        except TheoremViolationError as exc:
            exc.with_context(curve=self.curve.name)
            logger.warning("violation at p = %d: %s", self.record.p, exc)
            self.record.checks[name.value] = Verdict.FAIL
            self.record.violations.append(exc.as_dict())
            self.blocked = True
            return None
        self.record.checks[name.value] = Verdict.PASS
        return result

    def verdict(self, name: CheckName, ok: bool, message: str) -> None:
        self.run(name, partial(_require, ok, message, name, self.record.p))


def _require(ok: bool, message: str, name: CheckName, p: int) -> None:
    if not ok:
        raise TheoremViolationError(message, check=name.value, p=p)


def _counts_and_lpoly(
    curve: CurveModel, p: int, inert: bool, shortcut: bool
) -> tuple[tuple[int, ...], LPolynomial, TheoremViolationError | None]:
    if inert and shortcut:
        counts = count_upto(curve, p, 2)
        try:
            return counts.N, shortcut_inert(counts, p), None
        except S1NonZeroError as exc:
            # The full path still yields an L-polynomial for the record.
            violation = exc
    else:
        violation = None
    counts = count_triple(curve, p)
    return counts.N, from_counts(counts), violation


def verify_prime(curve: CurveModel, M: ImagQuadField, p: int, shortcut: bool = False) -> PrimeOutcome:
    """
    Count, rebuild L_p and run every identity check that applies at p.

    Bad primes and primes flagged by the Weil bound or integrality are
    skipped; ramified primes get counts and L_p but no structure checks.
    """
    start = time.perf_counter_ns()
    if curve.is_bad_prime(p):
        return PrimeOutcome(p, None, 0, "bad prime")
    kind = split_type(M, p).kind
    try:
        counts, lpoly, shortcut_violation = _counts_and_lpoly(curve, p, kind is SplitKind.INERT, shortcut)
    except (BadPrimeSuspectedError, NonIntegralCoefficientError) as exc:
        warnings.warn(f"{curve.name}: skipping p = {p}, {exc}", UserWarning, stacklevel=2)
        return PrimeOutcome(p, None, 0, str(exc))
    except BadPrimeError as exc:
        return PrimeOutcome(p, None, 0, str(exc))

    record = ResultRecord(p, kind, counts, lpoly)
    checks = _Checks(record, curve)
    checks.verdict(CheckName.WEIL_BOUND, lpoly.within_bounds(), f"L-polynomial coefficients out of range at p = {p}")
    checks.verdict(CheckName.WEIL_ROOTS, roots_on_circle(lpoly), f"a root of L is off |alpha| = sqrt(p) at p = {p}")
    if shortcut_violation is not None:
        checks.run(CheckName.INERT_FACTORIZATION, partial(_raise, shortcut_violation))
        for name in (CheckName.INERT_BASE_CHANGE, CheckName.INERT_PSI, CheckName.HASSE):
            record.checks[name.value] = Verdict.SKIPPED
    elif kind is SplitKind.INERT:
        _verify_inert(checks, lpoly, M)
    elif kind is SplitKind.SPLIT:
        _verify_split(checks, lpoly, M)

    elapsed_us = (time.perf_counter_ns() - start) // 1000
    return PrimeOutcome(p, record, elapsed_us)


def _raise(exc: Exception) -> None:
    raise exc


def _verify_inert(checks: _Checks, lpoly: LPolynomial, M: ImagQuadField) -> None:
    record, p = checks.record, checks.record.p
    factorization = checks.run(CheckName.INERT_FACTORIZATION, partial(check_inert, lpoly, p))
    checks.run(CheckName.INERT_BASE_CHANGE, lambda: check_inert_base_change(lpoly, factorization))
    value = checks.run(CheckName.INERT_PSI, lambda: extract_psi(factorization, M))
    ap = checks.run(CheckName.HASSE, lambda: ap_from_psi(value))
    if factorization is not None:
        record.t_p = factorization.t
    if value is not None:
        record.psi = value.psi
    if ap is not None:
        record.a_p = ap.a_p


def _verify_split(checks: _Checks, lpoly: LPolynomial, M: ImagQuadField) -> None:
    record, p = checks.record, checks.record.p
    if class_number(M.D).h > 1:
        # generators of the primes above p may not exist
        for name in SPLIT_CHECKS:
            record.checks[name.value] = Verdict.UNSUPPORTED
        return
    candidates = checks.run(CheckName.SPLIT_FACTORIZATION, partial(split_cubic_candidates, lpoly, M))
    if candidates is not None and len(candidates) > 1:
        logger.info("p = %d: %d conjugate pairs of cubic factors verify", p, len(candidates))
        record.candidates = candidates
        record.checks[CheckName.FACTOR_CHOICE.value] = Verdict.REVIEW
        checks.blocked = True
    _verify_psi(checks, candidates[0] if candidates else None)


def _verify_psi(checks: _Checks, factor: CubicFactor | None) -> None:
    record, p = checks.record, checks.record.p
    value = checks.run(CheckName.PSI_NORM, lambda: extract_psi(factor))
    if value is not None:
        record.psi = value.psi
    if not checks.blocked:
        try:
            partner = extract_psi(factor.complement())
            ok = conjugation_check(value, partner)
        except TheoremViolationError:
            ok = False
        checks.verdict(CheckName.CONJUGATION, ok, f"psi at the conjugate prime is not conj(psi) at p = {p}")
    else:
        record.checks[CheckName.CONJUGATION.value] = Verdict.SKIPPED
    ap = checks.run(CheckName.HASSE, lambda: ap_from_psi(value))
    if ap is not None:
        record.a_p = ap.a_p


def resolve_factor_choices(result: RunResult, curve: CurveModel, M: ImagQuadField) -> None:
    """
    Settle split primes where several cubic factors verify.

    The character table of the primes with a unique factor picks the
    candidate whose Hecke value it predicts; the remaining checks then run
    on that candidate. Primes the table cannot decide stay under review.
    """
    pending = [r for r in result.records if r.checks.get(CheckName.FACTOR_CHOICE.value) is Verdict.REVIEW]
    if not pending:
        return
    values = [v for r in result.records if (v := r.hecke_value()) is not None]
    try:
        report = character_consistency(values, M)
    except PreconditionError as exc:
        logger.warning("%s: %d primes stay under review, %s", curve.name, len(pending), exc)
        return
    for record in pending:
        factor = choose_by_character(record.candidates, report)
        if factor is None:
            logger.warning("%s: the character table does not settle the factor at p = %d", curve.name, record.p)
            continue
        record.checks[CheckName.FACTOR_CHOICE.value] = Verdict.PASS
        _verify_psi(_Checks(record, curve), factor)


def _default_workers() -> int:
    return Settings.from_env().workers


def iter_outcomes(spec: CurveSpec, **kwargs: Unpack[RunArgs]) -> Iterator[PrimeOutcome]:
    """
    Outcomes for every prime up to the bound, in increasing order.

    With more than one worker the primes are spread over a process pool;
    ``Executor.map`` yields results in submission order.
    """
    bound = kwargs.get("primes_up_to", DEFAULT_PRIME_BOUND)
    shortcut = kwargs.get("shortcut", False)
    workers = kwargs.get("workers") or _default_workers()
    curve, M = spec.curve(), spec.field()
    primes = list(primerange(2, bound + 1))
    task = partial(verify_prime, curve, M, shortcut=shortcut)
    if workers <= 1 or len(primes) < 2:
        yield from map(task, primes)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(task, primes)


def run_curve(spec: CurveSpec, **kwargs: Unpack[RunArgs]) -> RunResult:
    """
    Collect every record of a run, with timings kept apart.

    Split primes with several verified cubic factors are settled afterwards
    by ``resolve_factor_choices``.
    """
    result = RunResult()
    M = spec.field()
    if not class_number_bound_check(M):
        logger.warning(
            "%s: %s has class number %d > 1 and cannot be the multiplication field of a Jacobian over Q",
            spec.name,
            M,
            class_number(M.D).h,
        )
    for outcome in iter_outcomes(spec, **kwargs):
        if outcome.record is None:
            result.skipped[outcome.p] = outcome.skipped or ""
            continue
        result.records.append(outcome.record)
        result.timings.append((outcome.p, outcome.elapsed_us))
    resolve_factor_choices(result, spec.curve(), M)
    logger.info(
        "%s: %d records, %d skipped, %d violations",
        spec.name,
        len(result.records),
        len(result.skipped),
        len(result.violations),
    )
    return result
