"""2-adic decomposition of exact counts."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class TwoAdic:
    """``value == 2**valuation * odd_part``; zero has valuation ``math.inf``."""

    valuation: int | float
    odd_part: int

    @property
    def value(self) -> int:
        if self.valuation == math.inf:
            return 0
        return self.odd_part << self.valuation


def decompose(value: int) -> TwoAdic:
    if value < 0:
        raise ValueError(f"counts are nonnegative, got {value}")
    if value == 0:
        return TwoAdic(math.inf, 0)
    v = (value & -value).bit_length() - 1
    return TwoAdic(v, value >> v)


def v2(value: int) -> int | float:
    return decompose(value).valuation


def format_valuation(v) -> str:
    return "inf" if v == math.inf else str(v)
