"""Full versus shortcut timings at inert primes."""

import csv
import logging
import time
import warnings
from dataclasses import dataclass
from typing import TextIO

from sympy import primerange

from .config import DEFAULT_PRIME_BOUND
from .curves import count_triple
from .enums import SplitKind
from .exceptions import ImagMultError
from .ff import make_ext_field
from .imstruct import check_inert, shortcut_pipeline
from .lpoly import from_counts
from .quadfield import split_type
from .specfile import CurveSpec


logger = logging.getLogger(__name__)

FIELDS = ("p", "full_us", "shortcut_us", "ratio")


@dataclass(frozen=True)
class BenchRow:
    p: int
    full_us: int
    shortcut_us: int

    @property
    def ratio(self) -> float:
        return self.full_us / max(self.shortcut_us, 1)


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]

    @property
    def aggregate_ratio(self) -> float | None:
        if not self.rows:
            return None
        return sum(r.full_us for r in self.rows) / max(sum(r.shortcut_us for r in self.rows), 1)

    def write_csv(self, out: TextIO) -> None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(FIELDS)
        for row in self.rows:
            writer.writerow((row.p, row.full_us, row.shortcut_us, f"{row.ratio:.3f}"))
        if self.aggregate_ratio is not None:
            full_us = sum(r.full_us for r in self.rows)
            shortcut_us = sum(r.shortcut_us for r in self.rows)
            writer.writerow(("total", full_us, shortcut_us, f"{self.aggregate_ratio:.3f}"))


def bench_curve(spec: CurveSpec, primes_up_to: int = DEFAULT_PRIME_BOUND) -> BenchReport:
    """
    Time both paths at every good inert prime up to the bound.

    Extension fields are built before timing so neither path pays for them.
    A run with no inert primes returns an empty report and warns.
    """
    curve, M = spec.curve(), spec.field()
    rows = []
    for p in primerange(2, primes_up_to + 1):
        if curve.is_bad_prime(p) or split_type(M, p).kind is not SplitKind.INERT:
            continue
        for k in (1, 2, 3):
            make_ext_field(p, k)
        try:
            start = time.perf_counter_ns()
            check_inert(from_counts(count_triple(curve, p)), p)
            full_us = (time.perf_counter_ns() - start) // 1000
            shortcut_us = shortcut_pipeline(curve, M, p).elapsed_us
        except ImagMultError as exc:
            logger.warning("p = %d left out of the benchmark: %s", p, exc)
            continue
        rows.append(BenchRow(p, full_us, shortcut_us))
    if not rows:
        warnings.warn(f"{spec.name}: no good inert primes up to {primes_up_to}", UserWarning, stacklevel=2)
    return BenchReport(tuple(rows))
