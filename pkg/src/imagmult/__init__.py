from .curves import (
    HyperellipticCurve,
    PlaneQuartic,
    PointCounts,
    SuperellipticCurve,
    brute_force_oracle,
    count_points,
    count_triple,
)
from .diffsig import MonomialAutomorphism, SignatureReport, act, analyze, differential_basis
from .ecmatch import EllipticAp, WeierstrassCurve, ap_from_psi, ec_count, find_matching_curve
from .enums import CurveKind, SplitKind, Verdict
from .ff import ExtField, PrimeField, count_roots, make_ext_field, quadratic_character
from .imstruct import (
    CubicFactor,
    HeckeValue,
    InertFactorization,
    character_consistency,
    check_inert,
    choose_by_character,
    conjugation_check,
    extract_psi,
    shortcut_pipeline,
    split_cubic_candidates,
    split_cubic_factor,
)
from .lpoly import LPolynomial, evaluate_roots, from_counts, roots_on_circle, shortcut_inert
from .quadfield import ImagQuadField, QuadInt, class_number, split_type, units
from .registry import Registry, default_registry, point_counter, point_oracle
from .specfile import CurveSpec, format_spec, load_spec, parse_spec


__all__ = [
    "CubicFactor",
    "CurveKind",
    "CurveSpec",
    "EllipticAp",
    "ExtField",
    "HeckeValue",
    "HyperellipticCurve",
    "ImagQuadField",
    "InertFactorization",
    "LPolynomial",
    "MonomialAutomorphism",
    "PlaneQuartic",
    "PointCounts",
    "PrimeField",
    "QuadInt",
    "Registry",
    "SignatureReport",
    "SplitKind",
    "SuperellipticCurve",
    "Verdict",
    "WeierstrassCurve",
    "act",
    "analyze",
    "ap_from_psi",
    "brute_force_oracle",
    "character_consistency",
    "check_inert",
    "choose_by_character",
    "class_number",
    "conjugation_check",
    "count_points",
    "count_roots",
    "count_triple",
    "default_registry",
    "differential_basis",
    "ec_count",
    "evaluate_roots",
    "extract_psi",
    "find_matching_curve",
    "format_spec",
    "from_counts",
    "load_spec",
    "make_ext_field",
    "parse_spec",
    "point_counter",
    "point_oracle",
    "quadratic_character",
    "roots_on_circle",
    "shortcut_inert",
    "shortcut_pipeline",
    "split_cubic_candidates",
    "split_cubic_factor",
    "split_type",
    "units",
]
