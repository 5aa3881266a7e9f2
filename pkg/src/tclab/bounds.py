from __future__ import annotations

import re
from dataclasses import asdict, dataclass, replace
from typing import Any

from tclab.errors import InputError

DEFAULT_SEED = 0
# Random trials behind a generic dimension estimate.
DIM_TRIALS = 3
SOP_ATTEMPTS = 16

window_pattern = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


@dataclass(frozen=True)
class Window:
    """
    Every bound a computation may exhaust.

    ``n_lo..n_hi`` is the degree window; the rest replace "for some s", "for all
    q = p^e >> 0" and "N >> 0" by finite searches.
    """

    n_lo: int = -6
    n_hi: int = 8
    s_max: int = 6
    e_max: int = 2
    k_max: int = 3
    m_max: int = 2
    l_max: int = 2
    powers: tuple[int, ...] = (1, 2, 4)
    degree_cap: int = 1200

    def __post_init__(self):
        object.__setattr__(self, "powers", tuple(self.powers))
        if self.n_lo > self.n_hi:
            raise InputError(f"Empty window {self.n_lo}..{self.n_hi}.")
        for name in ("s_max", "e_max", "k_max", "m_max", "l_max", "degree_cap"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be at least 1.")
        if not self.powers or any(n < 1 for n in self.powers):
            raise InputError(f"Power ladder {self.powers} must be positive integers.")
        if list(self.powers) != sorted(set(self.powers)):
            raise InputError(f"Power ladder {self.powers} must be strictly increasing.")

    @classmethod
    def parse_range(cls, text: str) -> tuple[int, int]:
        match = window_pattern.match(text)
        if not match:
            raise InputError(f"Window {text!r} is not of the form LO..HI.")
        return int(match.group(1)), int(match.group(2))

    def degrees(self) -> range:
        return range(self.n_lo, self.n_hi + 1)

    def replace(self, **changes) -> Window:
        return replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        window = asdict(self)
        window["powers"] = list(self.powers)
        return window
