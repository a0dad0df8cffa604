from typing import Any, NotRequired, TypedDict


type Coefficients = tuple[int, ...]
type ExponentPair = tuple[int, int]


class RunArgs(TypedDict, total=False):
    """Options for a verification run over a range of primes."""

    primes_up_to: int
    shortcut: bool
    workers: int


class AutomorphismDoc(TypedDict):
    """The automorphism field of a curve spec document."""

    zeta_x: list[int]
    zeta_y: list[int]


class CurveSpecDoc(TypedDict):
    """A curve spec document as it appears on disk."""

    format: int
    name: str
    model: str
    d: int
    m: NotRequired[int]
    coefficients: list[int]
    bad_primes: list[int]
    automorphism: NotRequired[AutomorphismDoc]
    note: NotRequired[str]


class ResultRecordDoc(TypedDict):
    """One line of a result stream."""

    p: int
    split: str
    N1: int
    N2: int
    N3: NotRequired[int]
    a1: int
    a2: int
    a3: int
    t_p: NotRequired[int]
    psi: NotRequired[list[int]]
    a_p: NotRequired[int]
    candidates: NotRequired[list[list[list[int]]]]
    checks: dict[str, str]
    violations: NotRequired[list[dict[str, Any]]]
