"""Safety ceilings.  Every exhaustive routine consults a :class:`Limits`."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    max_cycles: int = 1_000_000
    max_enumerate_n: int = 9
    max_geometric_points: int = 40
    max_pointcount_n: int = 7
    shell_budget: int = 200_000

    @classmethod
    def from_env(cls) -> "Limits":
        limits = cls()
        raw = os.environ.get("SEP_MAX_CYCLES")
        if raw:
            limits = replace(limits, max_cycles=int(raw))
        return limits


DEFAULT_LIMITS = Limits.from_env()
