"""Tests for the action of automorphisms on regular differentials."""

from fractions import Fraction
from pathlib import Path

import pytest

from imagmult.curves import HyperellipticCurve
from imagmult.diffsig import (
    Differential,
    MonomialAutomorphism,
    RootOfUnity,
    SignatureReport,
    act,
    analyze,
    differential_basis,
)
from imagmult.exceptions import AutomorphismError, SignatureViolationError, UnsupportedError
from imagmult.specfile import CurveSpec, load_spec


IMAG = RootOfUnity(Fraction(1, 4))
MINUS_I = RootOfUnity(Fraction(3, 4))
MINUS_ONE = RootOfUnity(Fraction(1, 2))
ZETA_3 = RootOfUnity(Fraction(1, 3))


def _report(data_dir: Path, name: str) -> SignatureReport:
    spec = load_spec(data_dir / f"{name}.json")
    automorphism = spec.automorphism_model()
    assert automorphism is not None
    return analyze(spec.curve(), automorphism)


class TestRootOfUnity:
    """Tests for exact roots of unity."""

    def test_reduction(self) -> None:
        """Test that exponents are taken mod 1."""
        assert RootOfUnity.from_pair(5, 4) == IMAG
        assert RootOfUnity.from_pair(-1, 4) == MINUS_I
        assert (IMAG * IMAG) == MINUS_ONE
        assert IMAG**4 == RootOfUnity(Fraction(0))

    def test_names(self) -> None:
        """Test the printed names."""
        assert str(IMAG) == "i"
        assert str(MINUS_ONE) == "-1"
        assert str(ZETA_3) == "zeta_3"
        assert str(ZETA_3**2) == "zeta_3^2"

    def test_half_planes(self) -> None:
        """Test which roots lie above the real axis."""
        assert IMAG.upper_half_plane()
        assert ZETA_3.upper_half_plane()
        assert not MINUS_I.upper_half_plane()
        assert MINUS_ONE.is_rational()
        assert abs(IMAG.to_complex() - 1j) < 1e-12

    def test_invalid_order(self) -> None:
        """Test that a zero order is rejected."""
        with pytest.raises(AutomorphismError):
            RootOfUnity.from_pair(1, 0)

    def test_order_limit(self) -> None:
        """Test that automorphisms of large order are refused."""
        with pytest.raises(AutomorphismError):
            MonomialAutomorphism.from_pairs((1, 5), (1, 4))


class TestBasis:
    """Tests for the standard differential bases."""

    def test_hyperelliptic(self, d1_spec: CurveSpec) -> None:
        """Test dx/y, x dx/y, x^2 dx/y."""
        assert [str(w) for w in differential_basis(d1_spec.curve())] == ["dx/y", "x dx/y", "x^2 dx/y"]

    def test_superelliptic(self, d3_spec: CurveSpec) -> None:
        """Test dx/y, dx/y^2, x dx/y^2 for y^3 = quartic."""
        assert differential_basis(d3_spec.curve()) == [Differential(0, 1), Differential(0, 2), Differential(1, 2)]

    def test_custom_basis(self, d1_spec: CurveSpec) -> None:
        """Test that a user basis must have three valid monomials."""
        basis = differential_basis(d1_spec.curve(), [(0, 1), (1, 1), (2, 1)])
        assert len(basis) == 3
        with pytest.raises(UnsupportedError):
            differential_basis(d1_spec.curve(), [(0, 1), (1, 0), (2, 1)])

    def test_plane_quartic(self, d7_spec: CurveSpec) -> None:
        """Test that plane quartics have no standard monomial basis."""
        with pytest.raises(UnsupportedError):
            differential_basis(d7_spec.curve())


class TestAnalyze:
    """Tests for eigenvalues, signatures and the generated algebra."""

    @pytest.mark.parametrize("name", ["d1", "x7_minus_5x"])
    def test_gaussian_action(self, data_dir: Path, name: str) -> None:
        """Test (x, y) -> (-x, iy) on an odd septic: eigenvalues (i, -i, i)."""
        report = _report(data_dir, name)
        assert report.eigenvalues == (IMAG, MINUS_I, IMAG)
        assert report.signature == (2, 1)
        assert report.generated_algebra == "Q(i)"
        assert report.unital
        assert report.imaginary_multiplication

    def test_eisenstein_action(self, data_dir: Path) -> None:
        """Test y -> zeta_3 y on y^3 = x^4 - x + 1."""
        report = _report(data_dir, "d3")
        assert report.eigenvalues == (ZETA_3**2, ZETA_3, ZETA_3)
        assert report.signature == (2, 1)
        assert report.generated_algebra == "Q(sqrt(-3))"
        assert report.unital

    @pytest.mark.parametrize(
        ("name", "eigenvalues"),
        [("y4_cubic", (IMAG, MINUS_ONE, IMAG)), ("x8_11x4_3", (IMAG, MINUS_ONE, MINUS_I))],
    )
    def test_non_unital(self, data_dir: Path, name: str, eigenvalues: tuple[RootOfUnity, ...]) -> None:
        """Test actions with a rational eigenvalue, which split off a factor Q."""
        report = _report(data_dir, name)
        assert report.eigenvalues == eigenvalues
        assert report.generated_algebra == "Q x Q(i)"
        assert not report.unital
        assert not report.imaginary_multiplication
        assert "no imaginary multiplication" in report.render()

    def test_hyperelliptic_involution(self, d1_spec: CurveSpec) -> None:
        """Test that y -> -y acts as -1 and generates only Q."""
        report = analyze(d1_spec.curve(), MonomialAutomorphism.from_pairs((0, 1), (1, 2)))
        assert report.eigenvalues == (MINUS_ONE,) * 3
        assert report.generated_algebra == "Q"
        assert report.signature is None

    def test_not_an_automorphism(self) -> None:
        """Test that a substitution changing the equation is rejected."""
        curve = HyperellipticCurve(name="even", f=(3, 0, 0, 0, 11, 0, 0, 0, 1))
        with pytest.raises(AutomorphismError):
            analyze(curve, MonomialAutomorphism.from_pairs((1, 2), (1, 4)))

    def test_signature_violation(self) -> None:
        """Test that a unital quadratic action of signature (3, 0) is a violation."""
        automorphism = MonomialAutomorphism.from_pairs((0, 1), (1, 3))
        with pytest.raises(SignatureViolationError) as exc_info:
            act(automorphism, [Differential(0, 1), Differential(1, 1), Differential(2, 1)])
        assert exc_info.value.check == "signature"

    def test_cyclotomic_action(self) -> None:
        """Test that an order-8 action generates Q(zeta_8) rather than a quadratic field."""
        automorphism = MonomialAutomorphism.from_pairs((1, 8), (0, 1))
        report = act(automorphism, [Differential(0, 1), Differential(1, 1), Differential(2, 1)])
        assert report.generated_algebra == "Q(zeta_8)"
        assert report.unital

    def test_render(self, data_dir: Path) -> None:
        """Test the printed report."""
        text = _report(data_dir, "d1").render()
        assert "eigenvalues: (i, -i, i)" in text
        assert "signature: (2, 1)" in text
        assert "unital: yes" in text
