"""
Runtime configuration: module-level defaults plus the environment override
for the enumeration guard.
"""
import os

from errors import GuardError, SchemaError

DEFAULT_MAX_N = 12  # C(12, 6) = 924 Plücker indices
MAX_N_ENV = "GRKN_MAX_N"
PARALLEL_MIN_TASKS = 8
DEFAULT_MAX_ENTRY = 100
DEFAULT_SEED = 0
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def max_n() -> int:
    """
    Return the largest n allowed without an explicit override.

    Reads GRKN_MAX_N from the environment when it is set.

    Raises:
        SchemaError: If GRKN_MAX_N is set but is not a positive integer.
    """
    raw = os.environ.get(MAX_N_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise SchemaError(f"{MAX_N_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise SchemaError(f"{MAX_N_ENV} must be positive, got {value}")
    return value


def check_guard(n: int, override: bool = False) -> None:
    """Raise GuardError when n exceeds max_n() and no override was given."""
    limit = max_n()
    if n > limit and not override:
        raise GuardError(
            f"n={n} exceeds the guard n<={limit}; set {MAX_N_ENV} or pass the override flag"
        )
