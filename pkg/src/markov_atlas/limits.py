"""Resource caps for the exhaustive searches.

Defaults are sized for desk-scale experiments.  They can be overridden
process-wide through the environment variable ``MARKOV_ATLAS_LIMITS``,
a comma-separated list of ``key=value`` pairs, e.g.::

    MARKOV_ATLAS_LIMITS="max_total=10,max_fiber=2000000"
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import ResourceLimitError

_ENV_VAR = "MARKOV_ATLAS_LIMITS"


@dataclass(frozen=True)
class Limits:
    max_vertices: int = 16
    max_total: int = 8
    max_fiber: int = 1_000_000

    def check_vertices(self, n):
        if n > self.max_vertices:
            raise ResourceLimitError(
                f"{n} vertices exceeds the cap of {self.max_vertices}")

    def check_total(self, total):
        if total > self.max_total:
            raise ResourceLimitError(
                f"table total {total} exceeds the cap of {self.max_total}")


def _from_env() -> Limits:
    raw = os.environ.get(_ENV_VAR, "")
    limits = Limits()
    if not raw.strip():
        return limits
    overrides = {}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in Limits.__dataclass_fields__:
            raise ResourceLimitError(f"unknown limit {key!r} in {_ENV_VAR}")
        try:
            overrides[key] = int(value)
        except ValueError:
            raise ResourceLimitError(
                f"limit {key!r} in {_ENV_VAR} is not an integer") from None
    return replace(limits, **overrides)


def default_limits() -> Limits:
    """Limits from the environment, re-read on every call."""
    return _from_env()
