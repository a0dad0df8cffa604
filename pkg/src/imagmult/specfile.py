"""
Curve spec documents.

A spec is a JSON object written one key per line in a fixed key order, so a
formatted document round-trips byte for byte:

    {
      "format": 1,
      "name": "d1",
      "model": "hyperelliptic",
      "d": 1,
      "coefficients": [0, 1, 0, 1, 0, -1, 0, 1],
      "bad_primes": [],
      "automorphism": {"zeta_x": [1, 2], "zeta_y": [1, 4]}
    }

Hyperelliptic and superelliptic coefficients are those of f, ascending by
degree. Plane quartic coefficients follow ``curves.QUARTIC_MONOMIALS``.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .curves import CurveModel, HyperellipticCurve, PlaneQuartic, SuperellipticCurve
from .diffsig import MonomialAutomorphism
from .enums import CurveKind
from .exceptions import CurveModelError, ImagMultError, SpecFormatError
from .quadfield import ImagQuadField
from .types import CurveSpecDoc, ExponentPair


FORMAT_VERSION = 1
KEY_ORDER = ("format", "name", "model", "d", "m", "coefficients", "bad_primes", "automorphism", "note")
_REQUIRED = ("format", "name", "model", "d", "coefficients", "bad_primes")


@dataclass(frozen=True)
class CurveSpec:
    name: str
    model: CurveKind
    d: int
    coefficients: tuple[int, ...]
    bad_primes: tuple[int, ...] = ()
    m: int | None = None
    automorphism: tuple[ExponentPair, ExponentPair] | None = None
    note: str | None = None

    def curve(self) -> CurveModel:
        """
        Build the curve model.

        Raises:
            CurveModelError: If the coefficients do not describe a genus 3 model.
        """
        common = {"name": self.name, "bad_primes": self.bad_primes}
        match self.model:
            case CurveKind.HYPERELLIPTIC:
                return HyperellipticCurve(f=self.coefficients, **common)
            case CurveKind.SUPERELLIPTIC:
                if self.m is None:
                    raise CurveModelError(f"{self.name}: superelliptic specs need m")
                return SuperellipticCurve(m=self.m, f=self.coefficients, **common)
            case CurveKind.PLANE_QUARTIC:
                return PlaneQuartic(coefficients=self.coefficients, **common)

    def field(self) -> ImagQuadField:
        return ImagQuadField(self.d)

    def automorphism_model(self) -> MonomialAutomorphism | None:
        if self.automorphism is None:
            return None
        return MonomialAutomorphism.from_pairs(*self.automorphism)


def _int_list(doc: dict[str, Any], key: str) -> tuple[int, ...]:
    value = doc[key]
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise SpecFormatError(f"{key!r} must be a list of integers")
    return tuple(value)


def _pair(value: Any, key: str) -> ExponentPair:
    if not isinstance(value, list) or len(value) != 2 or not all(isinstance(v, int) for v in value):
        raise SpecFormatError(f"automorphism {key!r} must be a [numerator, order] pair")
    return (value[0], value[1])


def parse_spec(text: str) -> CurveSpec:
    """
    Parse a spec document.

    Raises:
        SpecFormatError: On malformed JSON, unknown or missing keys, a wrong
            format version, or an invalid field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecFormatError("a curve spec is a JSON object")
    unknown = set(doc) - set(KEY_ORDER)
    if unknown:
        raise SpecFormatError(f"unknown keys: {sorted(unknown)}")
    missing = [key for key in _REQUIRED if key not in doc]
    if missing:
        raise SpecFormatError(f"missing keys: {missing}")
    if doc["format"] != FORMAT_VERSION:
        raise SpecFormatError(f"unsupported format {doc['format']!r}, expected {FORMAT_VERSION}")
    try:
        model = CurveKind(doc["model"])
    except ValueError as exc:
        raise SpecFormatError(f"unknown model {doc['model']!r}") from exc
    if not isinstance(doc["d"], int) or not isinstance(doc["name"], str):
        raise SpecFormatError("'name' must be a string and 'd' an integer")
    m = doc.get("m")
    if (model is CurveKind.SUPERELLIPTIC) != (m is not None):
        raise SpecFormatError("'m' is required for superelliptic models and only for them")

    automorphism = None
    if "automorphism" in doc:
        aut = doc["automorphism"]
        if not isinstance(aut, dict) or set(aut) != {"zeta_x", "zeta_y"}:
            raise SpecFormatError("'automorphism' must have exactly zeta_x and zeta_y")
        automorphism = (_pair(aut["zeta_x"], "zeta_x"), _pair(aut["zeta_y"], "zeta_y"))

    spec = CurveSpec(
        name=doc["name"],
        model=model,
        d=doc["d"],
        coefficients=_int_list(doc, "coefficients"),
        bad_primes=_int_list(doc, "bad_primes"),
        m=m,
        automorphism=automorphism,
        note=doc.get("note"),
    )
    try:
        spec.field()
    except ImagMultError as exc:
        raise SpecFormatError(f"invalid 'd': {exc}") from exc
    return spec


def load_spec(path: str | Path) -> CurveSpec:
    return parse_spec(Path(path).read_text())


def to_doc(spec: CurveSpec) -> CurveSpecDoc:
    doc: dict[str, Any] = {"format": FORMAT_VERSION, "name": spec.name, "model": spec.model.value, "d": spec.d}
    if spec.m is not None:
        doc["m"] = spec.m
    doc["coefficients"] = list(spec.coefficients)
    doc["bad_primes"] = list(spec.bad_primes)
    if spec.automorphism is not None:
        zeta_x, zeta_y = spec.automorphism
        doc["automorphism"] = {"zeta_x": list(zeta_x), "zeta_y": list(zeta_y)}
    if spec.note is not None:
        doc["note"] = spec.note
    return doc  # type: ignore[return-value]


def format_spec(spec: CurveSpec) -> str:
    """Deterministic rendering: one key per line, values as compact inline JSON."""
    doc = to_doc(spec)
    lines = [f"  {json.dumps(key)}: {json.dumps(doc[key], ensure_ascii=False)}" for key in KEY_ORDER if key in doc]
    return "{\n" + ",\n".join(lines) + "\n}\n"
