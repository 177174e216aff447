from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..graph import InvalidParameterError


class NoDecompositionError(ValueError):
    """``k`` is not a non-negative combination of the two block sizes."""


@dataclass(frozen=True)
class FrobeniusPair:
    alpha: int
    beta: int


def frobenius_decompose(k: int, a: int, b: int) -> FrobeniusPair:
    """Write ``k = alpha * a + beta * b`` with non-negative integers, minimal ``alpha``.

    Success is guaranteed once ``k >= (a - 1) * (b - 1)``; smaller ``k`` may or
    may not decompose.
    """
    if a < 1 or b < 1:
        raise InvalidParameterError(f"block sizes must be positive, got ({a}, {b})")
    if gcd(a, b) != 1:
        raise InvalidParameterError(f"block sizes {a} and {b} are not coprime")
    if k < 0:
        raise NoDecompositionError(f"{k} is negative")
    for alpha in range(k // a + 1):
        rest = k - alpha * a
        if rest % b == 0:
            return FrobeniusPair(alpha, rest // b)
    raise NoDecompositionError(f"{k} is not a non-negative combination of {a} and {b}")
