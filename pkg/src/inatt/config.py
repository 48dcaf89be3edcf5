"""Run configuration: a flat ``key=value`` file with ``#`` comments.

Precedence, lowest first: built-in defaults, the config file (``--config`` or
the ``INATT_CONFIG`` environment variable), command-line flags.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import DomainError
from .model import Agent, CostSpec
from .order import reward_grid

ENV_VAR = "INATT_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    w: float = 1.0
    utility: str = "linear"
    beta: float = 1.0
    gamma: float = 1.0
    x0: float = 0.0
    cost: str = "quadratic"
    sigma: float = 2.0
    cost_table: str | None = None
    x_min: float | None = None
    x_max: float | None = None
    x_count: int = 41
    x_spacing: str = "geometric"
    grid_n: int = 4001
    seed: int = 42
    samples: int = 1000
    out: str | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.x_count < 1:
            raise DomainError("x_count must be at least 1")
        if self.grid_n < 101 or self.grid_n % 2 == 0:
            raise DomainError(f"grid_n={self.grid_n} must be odd and at least 101")
        if self.workers < 1:
            raise DomainError("workers must be at least 1")

    def agent(self) -> Agent:
        return Agent(w=self.w, family=self.utility, beta=self.beta, gamma=self.gamma, x0=self.x0)

    def cost_spec(self) -> CostSpec:
        if self.cost == "quadratic":
            return CostSpec.quadratic()
        if self.cost == "shannon":
            return CostSpec.shannon()
        if self.cost == "tsallis":
            return CostSpec.tsallis(self.sigma)
        if self.cost == "tabulated":
            if not self.cost_table:
                raise DomainError("cost=tabulated needs cost_table=<path to q,c CSV>")
            return CostSpec.from_csv(self.cost_table)
        raise DomainError(f"unknown cost {self.cost!r}")

    def rewards(self) -> tuple[float, ...]:
        x_min = self.x0 if self.x_min is None else self.x_min
        x_max = self.x0 + 20.0 if self.x_max is None else self.x_max
        if self.x_count == 1:
            return (x_min,)
        return reward_grid(self.agent(), x_min, x_max, self.x_count, self.x_spacing)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def _coerce(key: str, raw: str):
    kind = _FIELDS[key].type
    if raw.lower() in ("", "none") and "None" in str(kind):
        return None
    try:
        if kind.startswith("float"):
            return float(raw)
        if kind.startswith("int"):
            return int(raw)
    except ValueError:
        raise DomainError(f"config key {key!r}: cannot parse {raw!r}") from None
    return raw


def parse_config_text(text: str, source: str = "<config>") -> dict[str, object]:
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{source}:{lineno}: expected key=value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELDS:
            raise DomainError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return values


def load_config(path: str | Path | None = None, overrides: Mapping[str, object] | None = None) -> RunConfig:
    """Merge defaults, the config file and non-``None`` overrides."""
    values: dict[str, object] = {}
    path = path or os.environ.get(ENV_VAR)
    if path:
        p = Path(path)
        if not p.is_file():
            raise DomainError(f"config file {p} not found")
        values.update(parse_config_text(p.read_text(), str(p)))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return RunConfig(**values)
