import os
from collections.abc import Mapping
from dataclasses import dataclass


WORKERS_ENV = "IMAGMULT_WORKERS"
LOG_LEVEL_ENV = "IMAGMULT_LOG_LEVEL"

DEFAULT_PRIME_BOUND = 300
DEFAULT_COEFF_BOUND = 200
DEFAULT_MODULUS_BOUND = 1024
ORACLE_FIELD_LIMIT = 10_000
MIN_MATCH_PRIMES = 20
MIN_CHARACTER_PRIMES = 10


@dataclass(frozen=True)
class Settings:
    """Process-wide settings, read from the environment once per command."""

    workers: int = 1
    log_level: str = "WARNING"
    prime_bound: int = DEFAULT_PRIME_BOUND
    coeff_bound: int = DEFAULT_COEFF_BOUND
    modulus_bound: int = DEFAULT_MODULUS_BOUND

    @classmethod
    def from_env(cls, environ: Mapping[str, str] | None = None) -> "Settings":
        """
        Build settings from environment variables.

        Args:
            environ: Mapping to read from. Defaults to ``os.environ``.

        Raises:
            ValueError: If the worker count is not a positive integer.
        """
        env = os.environ if environ is None else environ
        workers = int(env.get(WORKERS_ENV, "1"))
        if workers < 1:
            raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {workers}")
        return cls(workers=workers, log_level=env.get(LOG_LEVEL_ENV, "WARNING").upper())
