from enum import Enum


class CurveKind(Enum):
    """The three families of genus 3 curve models."""

    HYPERELLIPTIC = "hyperelliptic"
    SUPERELLIPTIC = "superelliptic"
    PLANE_QUARTIC = "plane_quartic"


class BackendLifetime(Enum):
    """Defines how long a resolved counting backend lives."""

    TRANSIENT = "transient"
    SINGLETON = "singleton"


class SplitKind(Enum):
    """Decomposition type of a rational prime in an imaginary quadratic field."""

    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


class OmegaKind(Enum):
    """Which generator the ring of integers uses: sqrt(-d) or (1 + sqrt(-d)) / 2."""

    SQRT = "sqrt"
    HALF = "half"


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    REVIEW = "review"
    UNSUPPORTED = "unsupported"


class CheckName(Enum):
    """Names of the per-prime identity checks, as they appear in result records."""

    WEIL_BOUND = "weil_bound"
    WEIL_ROOTS = "weil_roots"
    INERT_FACTORIZATION = "inert_factorization"
    INERT_BASE_CHANGE = "inert_base_change"
    INERT_PSI = "inert_psi"
    SPLIT_FACTORIZATION = "split_factorization"
    FACTOR_CHOICE = "factor_choice"
    PSI_NORM = "psi_norm"
    CONJUGATION = "conjugation"
    HASSE = "hasse"
    SHORTCUT = "shortcut"
    SIGNATURE = "signature"


class BackendRole(Enum):
    """What a registered backend computes."""

    COUNTER = "counter"
    ORACLE = "oracle"
