"""Run configuration: documented defaults, flat key=value config files, and
the FML_CONFIG environment fallback.  Flags always win over file values."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields

from .bounds import DEFAULT_C, DEFAULT_K
from .errors import DomainError
from .kolmogorov import DEFAULT_TOLERANCE
from .partitions import (
    DEFAULT_CEILING_ALL,
    DEFAULT_CEILING_NONCROSSING,
    DEFAULT_CEILING_PAIR,
)

ENV_CONFIG_VAR = "FML_CONFIG"

OUTPUT_FORMATS = ("text", "csv", "json")


@dataclass
class RunConfig:
    constant_C: float = DEFAULT_C
    constant_K: float = DEFAULT_K
    tolerance: float = DEFAULT_TOLERANCE
    ceiling_all: int = DEFAULT_CEILING_ALL
    ceiling_noncrossing: int = DEFAULT_CEILING_NONCROSSING
    ceiling_pair: int = DEFAULT_CEILING_PAIR
    output_format: str = "text"

    def __post_init__(self) -> None:
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(
                f"output format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}"
            )
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance}")


def load_config(path: str | None = None) -> RunConfig:
    """Build a RunConfig from a flat key=value file.

    When ``path`` is None the FML_CONFIG environment variable is consulted;
    when that is unset too, the defaults are returned.
    """
    if path is None:
        path = os.environ.get(ENV_CONFIG_VAR)
    if path is None:
        return RunConfig()
    values: dict[str, object] = {}
    known = {f.name: f.type for f in fields(RunConfig)}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in known:
                raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = _parse_value(key, value)
    return RunConfig(**values)


def _parse_value(key: str, value: str):
    if key == "output_format":
        return value
    if key.startswith("ceiling_"):
        return int(value)
    if value.lower() in ("inf", "infinity"):
        return math.inf
    return float(value)
