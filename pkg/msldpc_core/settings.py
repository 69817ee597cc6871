"""
Runtime tunables for msldpc.
Single place to configure field size limits, enumeration budgets, decoder
defaults and file locations.

Every value may be overridden by an MSLDPC_* environment variable, read at
call time. A malformed override keeps the default and logs a warning.
"""

from typing import Any, Dict
import logging
import os

from pydantic import BaseModel, ConfigDict, ValidationError

from msldpc_core.errors import ConfigError

log = logging.getLogger(__name__)

CATALOG_SCHEMA_VERSION: int = 1

# --- Defaults (env var name -> default) ---
DEFAULTS: Dict[str, int] = {
    "MSLDPC_MAX_FIELD_DEGREE": 24,
    "MSLDPC_DMIN_BUDGET": 2 ** 28,
    "MSLDPC_BP_ITERATIONS": 50,
    "MSLDPC_SEARCH_WORKERS": 1,
    "MSLDPC_SIM_BATCH": 256,
}

DEFAULT_CATALOG_PATH = "codes_catalog.jsonl"


def _positive_int(name: str) -> int:
    default = DEFAULTS[name]
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        log.warning("ignoring %s=%r: not an integer, using %d", name, raw, default)
        return default
    if value < 1:
        log.warning("ignoring %s=%r: must be positive, using %d", name, raw, default)
        return default
    return value


# Helpers -------------------------------------------------
def max_field_degree() -> int:
    """Largest extension degree m accepted by build_field (table size 2^m)."""
    return _positive_int("MSLDPC_MAX_FIELD_DEGREE")


def dmin_budget() -> int:
    """Largest number of messages (2^k) min_distance_exact may enumerate."""
    return _positive_int("MSLDPC_DMIN_BUDGET")


def bp_iterations() -> int:
    return _positive_int("MSLDPC_BP_ITERATIONS")


def search_workers() -> int:
    return _positive_int("MSLDPC_SEARCH_WORKERS")


def sim_batch_size() -> int:
    return _positive_int("MSLDPC_SIM_BATCH")


def catalog_path() -> str:
    return os.environ.get("MSLDPC_CATALOG", "").strip() or DEFAULT_CATALOG_PATH


class ConfigModel(BaseModel):
    """Base for validated run configurations; bad values surface as ConfigError."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    def __init__(self, **data: Any):
        try:
            super().__init__(**data)
        except ValidationError as e:
            raise ConfigError(f"{type(self).__name__}: {e}") from e
