"""Closed-form lid-chromatic numbers for paths, cycles and their products.

Each ``chi_lid_*`` function returns the value; :func:`evaluate` also returns a
short label naming the case that fired, for the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import InvalidParameterError


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParameterError(msg)


def _path_case(n: int) -> tuple[int, str]:
    _need(n >= 2, f"path needs n >= 2, got {n}")
    if n == 2:
        return 2, "P_2"
    if n % 2:
        return 3, "n odd"
    return 4, "n even, n >= 4"


def _cycle_case(n: int) -> tuple[int, str]:
    _need(n >= 3, f"cycle needs n >= 3, got {n}")
    if n == 3 or n % 4 == 0:
        return 3, "n = 3 or n = 0 mod 4"
    if n in (5, 7):
        return 5, "n in {5, 7}"
    return 4, "otherwise"


def _cart_cycle_path_case(m: int, n: int) -> tuple[int, str]:
    _need(m >= 3 and n >= 2, f"C_m [] P_n needs m >= 3, n >= 2, got ({m}, {n})")
    if m == 3:
        return 5, "m = 3"
    if m % 2:
        return 4, "m odd, m >= 5"
    return 3, "m even"


def _cart_cycle_cycle_case(m: int, n: int) -> tuple[int, str]:
    _need(m >= 3 and n >= 3, f"C_m [] C_n needs m, n >= 3, got ({m}, {n})")
    m, n = min(m, n), max(m, n)
    if m == 3:
        return 5, "m = 3"
    if m % 2 == 0 and n % 2 == 0:
        return 3, "m, n even"
    return 4, "otherwise"


def _tensor_path_path_case(m: int, n: int) -> tuple[int, str]:
    _need(m >= 2 and n >= 2, f"P_m x P_n needs m, n >= 2, got ({m}, {n})")
    m, n = min(m, n), max(m, n)
    if m == n == 2:
        return 2, "m = n = 2"
    if m % 2 == 0 and n % 2 == 0:
        # P_2 x P_n is two copies of P_n, which needs 4 colors for even n >= 4
        return 4, "m, n even, not both 2"
    return 3, "otherwise"


def _tensor_cycle_path_case(m: int, n: int) -> tuple[int, str]:
    _need(m >= 3 and n >= 2, f"C_m x P_n needs m >= 3, n >= 2, got ({m}, {n})")
    if n % 2:
        return 3, "n odd"
    if m % 4 == 0:
        return 3, "m = 0 mod 4, n even"
    return 4, "otherwise"


def _tensor_cycle_cycle_case(m: int, n: int) -> tuple[int, str]:
    _need(m >= 3 and n >= 3, f"C_m x C_n needs m, n >= 3, got ({m}, {n})")
    m, n = min(m, n), max(m, n)
    if m % 2 == 0 or n % 2 == 0:
        return 3, "m or n even"
    if (m, n) in ((3, 3), (3, 5)):
        return 5, "(m, n) in {(3,3), (3,5)}"
    if (m, n) in ((3, 7), (5, 5), (5, 7), (7, 7)):
        return 4, "(m, n) in {(3,7), (5,5), (5,7), (7,7)}"
    return 4, "m, n odd, max(m, n) >= 9"


def chi_lid_path(n: int) -> int:
    return _path_case(n)[0]


def chi_lid_cycle(n: int) -> int:
    return _cycle_case(n)[0]


def chi_lid_cart_cycle_path(m: int, n: int) -> int:
    return _cart_cycle_path_case(m, n)[0]


def chi_lid_cart_cycle_cycle(m: int, n: int) -> int:
    return _cart_cycle_cycle_case(m, n)[0]


def chi_lid_tensor_path_path(m: int, n: int) -> int:
    return _tensor_path_path_case(m, n)[0]


def chi_lid_tensor_cycle_path(m: int, n: int) -> int:
    return _tensor_cycle_path_case(m, n)[0]


def chi_lid_tensor_cycle_cycle(m: int, n: int) -> int:
    return _tensor_cycle_cycle_case(m, n)[0]


def generic_upper_bounds(chi_g: int, chi_h: int) -> tuple[int, int]:
    """Upper bounds ``(cartesian, tensor)`` from the factors' chromatic numbers."""
    _need(chi_g >= 2 and chi_h >= 2, "chromatic numbers must be at least 2")
    return chi_g * chi_h - 1, chi_g * chi_h


# family name -> (case function, number of size parameters, product, factor kinds)
FAMILIES = {
    "path": (_path_case, 1, "none", ("path",)),
    "cycle": (_cycle_case, 1, "none", ("cycle",)),
    "cart-cycle-path": (_cart_cycle_path_case, 2, "cartesian", ("cycle", "path")),
    "cart-cycle-cycle": (_cart_cycle_cycle_case, 2, "cartesian", ("cycle", "cycle")),
    "tensor-path-path": (_tensor_path_path_case, 2, "tensor", ("path", "path")),
    "tensor-cycle-path": (_tensor_cycle_path_case, 2, "tensor", ("cycle", "path")),
    "tensor-cycle-cycle": (_tensor_cycle_cycle_case, 2, "tensor", ("cycle", "cycle")),
}


@dataclass(frozen=True)
class FamilySpec:
    """A product family instance: ``factor1 (op) factor2`` with sizes ``m, n``."""

    family: str
    m: int
    n: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameterError(f"unknown family {self.family!r}")
        arity = FAMILIES[self.family][1]
        if arity == 2 and self.n is None:
            raise InvalidParameterError(f"family {self.family} needs two sizes")
        if arity == 1 and self.n is not None:
            raise InvalidParameterError(f"family {self.family} takes one size")
        evaluate(self.family, self.m, self.n)

    @property
    def product(self) -> str:
        return FAMILIES[self.family][2]

    @property
    def factors(self) -> tuple[tuple[str, int], ...]:
        kinds = FAMILIES[self.family][3]
        sizes = (self.m,) if self.n is None else (self.m, self.n)
        return tuple(zip(kinds, sizes))

    def value(self) -> int:
        return evaluate(self.family, self.m, self.n)[0]


def evaluate(family: str, m: int, n: int | None = None) -> tuple[int, str]:
    """Closed-form value and the name of the case that produced it."""
    if family not in FAMILIES:
        raise InvalidParameterError(f"unknown family {family!r}")
    case, arity = FAMILIES[family][:2]
    if arity == 1:
        if n is not None:
            raise InvalidParameterError(f"family {family} takes only -m")
        return case(m)
    if n is None:
        raise InvalidParameterError(f"family {family} needs both -m and -n")
    return case(m, n)
