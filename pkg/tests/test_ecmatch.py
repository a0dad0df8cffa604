"""Tests for traces of Frobenius and the Weierstrass search."""

import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from imagmult.config import DEFAULT_COEFF_BOUND, DEFAULT_PRIME_BOUND
from imagmult.ecmatch import (
    EllipticAp,
    WeierstrassCurve,
    ap_from_psi,
    cross_verify,
    ec_count,
    find_matching_curve,
    load_candidates,
    match_candidates,
    zero_trace_fraction,
)
from imagmult.enums import SplitKind
from imagmult.exceptions import BadPrimeError, CurveModelError, HasseViolationError, PreconditionError, SpecFormatError
from imagmult.imstruct import HeckeValue
from imagmult.pipeline import run_curve
from imagmult.quadfield import ImagQuadField
from imagmult.specfile import CurveSpec


# y^2 = x^3 - 2 has CM by Z[(1 + sqrt(-3)) / 2].
CM_CURVE = WeierstrassCurve(0, -2)


@pytest.fixture
def cm_traces() -> list[EllipticAp]:
    """Traces of y^2 = x^3 - 2 at the primes 5..97."""
    return [ec_count(CM_CURVE, p) for p in primerange(5, 100)]


class TestWeierstrassCurve:
    """Tests for the short Weierstrass model."""

    def test_singular(self) -> None:
        """Test that 4A^3 + 27B^2 = 0 is rejected."""
        with pytest.raises(CurveModelError):
            WeierstrassCurve(-3, 2)
        with pytest.raises(CurveModelError):
            WeierstrassCurve(0, 0)

    def test_good_primes(self) -> None:
        """Test that 2, 3 and the primes of the discriminant are bad."""
        assert CM_CURVE.discriminant == -16 * 108
        assert not CM_CURVE.is_good(3)
        assert CM_CURVE.is_good(5)
        assert not WeierstrassCurve(1, 1).is_good(31)


class TestTraces:
    """Tests for a_p from counts and from Hecke values."""

    @pytest.mark.parametrize("p", [7, 11, 19, 23, 31])
    def test_supersingular_x3_plus_x(self, p: int) -> None:
        """Test a_p = 0 for y^2 = x^3 + x at primes 3 mod 4."""
        assert ec_count(WeierstrassCurve(1, 0), p).a_p == 0

    @pytest.mark.parametrize("p", [5, 11, 17, 23])
    def test_supersingular_x3_plus_1(self, p: int) -> None:
        """Test a_p = 0 for y^2 = x^3 + 1 at primes 2 mod 3."""
        assert ec_count(WeierstrassCurve(0, 1), p).a_p == 0

    def test_small_count(self) -> None:
        """Test y^2 = x^3 + x over F_5, which has four points."""
        assert ec_count(WeierstrassCurve(1, 0), 5) == EllipticAp(5, 2)

    def test_bad_prime(self) -> None:
        """Test that counting at a bad prime is refused."""
        with pytest.raises(BadPrimeError):
            ec_count(WeierstrassCurve(1, 0), 3)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(-20, 20), st.integers(-20, 20), st.sampled_from(list(primerange(5, 200))))
    def test_hasse_bound(self, A: int, B: int, p: int) -> None:
        """Test |a_p| <= 2 sqrt(p) for every good prime."""
        if 4 * A**3 + 27 * B**2 == 0:
            return
        E = WeierstrassCurve(A, B)
        if E.is_good(p):
            assert ec_count(E, p).within_hasse()

    def test_ap_from_psi(self) -> None:
        """Test a_p = Tr psi at split primes and 0 at inert primes."""
        M = ImagQuadField(1)
        assert ap_from_psi(HeckeValue(5, SplitKind.SPLIT, M.element(2, 1))) == EllipticAp(5, 4)
        assert ap_from_psi(HeckeValue(7, SplitKind.INERT, M.element(-7))) == EllipticAp(7, 0)

    def test_hasse_violation(self) -> None:
        """Test that a trace beyond 2 sqrt(p) is a violation."""
        with pytest.raises(HasseViolationError) as exc_info:
            ap_from_psi(HeckeValue(5, SplitKind.SPLIT, ImagQuadField(1).element(3)))
        assert exc_info.value.check == "hasse"

    def test_cm_curve_traces_vanish_at_inert_primes(self, cm_traces: list[EllipticAp]) -> None:
        """Test a_p = 0 at primes 2 mod 3 for a curve with CM by Q(sqrt(-3))."""
        assert all(ap.a_p == 0 for ap in cm_traces if ap.p % 3 == 2)
        assert all(ap.a_p != 0 for ap in cm_traces if ap.p % 3 == 1)

    def test_zero_trace_fraction(self) -> None:
        """Test that about half the primes are supersingular for a CM curve."""
        assert 0.4 < zero_trace_fraction(WeierstrassCurve(1, 0), 200) < 0.6
        assert zero_trace_fraction(WeierstrassCurve(1, 0), 4) == 0.0


class TestSearch:
    """Tests for the bounded Weierstrass search."""

    def test_finds_itself(self, cm_traces: list[EllipticAp]) -> None:
        """Test that the traces of a curve recover that curve."""
        survivors = find_matching_curve(cm_traces, coeff_bound=5, prime_bound=100)
        assert CM_CURVE in survivors
        assert all(not cross_verify(E, cm_traces) for E in survivors)
        assert survivors == sorted(survivors, key=WeierstrassCurve.sort_key)

    def test_no_match(self, cm_traces: list[EllipticAp]) -> None:
        """Test that flipped traces at split primes match nothing small."""
        flipped = [EllipticAp(ap.p, -ap.a_p if ap.p == 7 else ap.a_p) for ap in cm_traces]
        assert CM_CURVE not in find_matching_curve(flipped, coeff_bound=3, prime_bound=100)

    def test_random_traces_match_nothing(self) -> None:
        """Test that traces drawn at random within the Hasse bound match no small curve."""
        rng = np.random.default_rng(7)
        aps = [EllipticAp(p, int(rng.integers(-math.isqrt(4 * p), math.isqrt(4 * p) + 1))) for p in primerange(5, 100)]
        assert find_matching_curve(aps, coeff_bound=10, prime_bound=100) == []

    def test_too_few_primes(self, cm_traces: list[EllipticAp]) -> None:
        """Test that the search needs twenty primes of data."""
        with pytest.raises(PreconditionError):
            find_matching_curve(cm_traces[:5], coeff_bound=3)

    def test_match_candidates(self, cm_traces: list[EllipticAp]) -> None:
        """Test filtering an explicit candidate list."""
        candidates = [WeierstrassCurve(1, 0), CM_CURVE]
        assert match_candidates(candidates, cm_traces, prime_bound=100) == [CM_CURVE]
        assert match_candidates([], cm_traces) == []

    def test_cross_verify(self, cm_traces: list[EllipticAp]) -> None:
        """Test that a different curve disagrees somewhere."""
        assert not cross_verify(CM_CURVE, cm_traces)
        assert cross_verify(WeierstrassCurve(1, 0), cm_traces)


class TestLoadCandidates:
    """Tests for reading candidate curves from a file."""

    def test_load(self, tmp_path: Path) -> None:
        """Test comments and blank lines are skipped."""
        path = tmp_path / "candidates.txt"
        path.write_text("# A B\n0 -2\n\n1 0\n")
        assert load_candidates(path) == [CM_CURVE, WeierstrassCurve(1, 0)]

    @pytest.mark.parametrize("line", ["1 2 3", "x 1", "0 0"])
    def test_bad_lines(self, tmp_path: Path, line: str) -> None:
        """Test malformed and singular entries."""
        path = tmp_path / "candidates.txt"
        path.write_text(f"0 -2\n{line}\n")
        with pytest.raises(SpecFormatError):
            load_candidates(path)


@pytest.mark.slow
class TestMatchFromCurves:
    """Tests for recovering the elliptic factor from the traces of a genus-3 run."""

    @staticmethod
    def _traces(spec: CurveSpec) -> list[EllipticAp]:
        result = run_curve(spec, primes_up_to=DEFAULT_PRIME_BOUND)
        assert not result.violations
        return [EllipticAp(r.p, r.a_p) for r in result.records if r.a_p is not None]

    def test_d1(self, d1_spec: CurveSpec) -> None:
        """Test that traces vanish exactly at the inert primes and a curve matches them."""
        aps = self._traces(d1_spec)
        assert all((ap.a_p == 0) == (ap.p % 4 == 3) for ap in aps)
        survivors = find_matching_curve(aps, coeff_bound=DEFAULT_COEFF_BOUND, prime_bound=DEFAULT_PRIME_BOUND)
        assert survivors
        assert cross_verify(survivors[0], aps) == []

    def test_d3(self, d3_spec: CurveSpec) -> None:
        """Test that a curve matches the traces of the Eisenstein curve."""
        aps = self._traces(d3_spec)
        assert all(ap.a_p == 0 for ap in aps if ap.p % 3 == 2)
        survivors = find_matching_curve(aps, coeff_bound=DEFAULT_COEFF_BOUND, prime_bound=DEFAULT_PRIME_BOUND)
        assert survivors
        assert cross_verify(survivors[0], aps) == []
