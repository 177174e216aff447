"""Optimal colorings for the path/cycle product families.

Routing, per family:

* Cartesian products use tile schemes. The base scheme composes four 4-color
  tiles over any ``C_m [] C_n`` whose sides split into blocks of 4 and 5; the
  remaining sizes use mined periodic patterns.
* Tensor products mostly copy a factor, ``f(u, v) = g(u)``. This is a
  lid-coloring whenever ``g`` is a lid-coloring of a factor with no adjacent
  twins and the other factor has no isolated vertex, because the closed
  neighborhood of ``(u, v)`` then carries exactly the colors ``g(N[u])``.
* The few small exceptional instances are solved directly.

Every coloring is verified before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from ..closed_form import FAMILIES, FamilySpec
from ..graph import (
    Graph,
    InvalidParameterError,
    ProductLabeling,
    cartesian_product,
    cycle_graph,
    family_graph,
    path_graph,
    tensor_product,
)
from ..solver import DEFAULT_BUDGET, find_lid_coloring
from ..verify import Coloring, lid_report
from .frobenius import frobenius_decompose
from .generic import ConstructionError
from .tiles import Axis, MiningError, Scheme, Tile, compose, layout_of_plan, render_tiles, tiles_for


def _only(*sizes: int) -> Callable[[int], bool]:
    return lambda s: s in sizes


def _odd5(s: int) -> bool:
    return s % 2 == 1 and s >= 5


def _odd3(s: int) -> bool:
    return s % 2 == 1 and s >= 3


def _even(s: int) -> bool:
    return s % 2 == 0


def _base_ties():
    for r in range(4):
        yield (4, 4, r, 0), (4, 5, r, 0)
        yield (4, 4, r, 3), (4, 5, r, 4)
    for r in range(5):
        for c in range(2):
            yield (5, 4, r, c), (5, 5, r, c)
    for r in range(2):
        for c in range(4):
            yield (4, 4, r, c), (5, 4, r, c)
        for c in range(5):
            yield (4, 5, r, c), (5, 5, r, c)


BASE_SCHEME = Scheme(
    "base", "cartesian", Axis("wrap", (4, 5)), Axis("wrap", (4, 5)), 4, tie=_base_ties
)
BASE_NAMES = {(4, 4): "T44", (4, 5): "T45", (5, 4): "T54", (5, 5): "T55"}


@dataclass(frozen=True)
class PatternFamily:
    """A mined periodic pattern: the instances of ``family`` that ``scheme`` covers."""

    family: str
    scheme: Scheme

    @property
    def name(self) -> str:
        return self.scheme.name

    @property
    def k(self) -> int:
        return self.scheme.k


def _pattern(family, name, product, rows, cols, k) -> PatternFamily:
    return PatternFamily(family, Scheme(name, product, rows, cols, k))


_OPEN2 = Axis("open", (2,), lambda s: s >= 2)
# one 5-block, then 2-blocks: every odd size from 5 up
_ODD52 = Axis("wrap", (5, 2), _odd5)

PATTERNS: dict[str, PatternFamily] = {
    p.name: p
    for p in (
        _pattern("cart-cycle-path", "cp-m3", "cartesian", Axis("wrap", (3,), _only(3)), _OPEN2, 5),
        _pattern("cart-cycle-path", "cp-odd", "cartesian", Axis("wrap", (4, 5), _odd5), _OPEN2, 4),
        _pattern("cart-cycle-path", "cp-m7", "cartesian", Axis("wrap", (7,), _only(7)), _OPEN2, 4),
        _pattern("cart-cycle-path", "cp-m11", "cartesian", Axis("wrap", (11,), _only(11)), _OPEN2, 4),
        _pattern("cart-cycle-path", "cp-even", "cartesian", Axis("wrap", (2,), _even), _OPEN2, 3),
        _pattern("cart-cycle-cycle", "cc-m3", "cartesian", Axis("wrap", (3,), _only(3)), Axis("wrap", (2, 3)), 5),
        _pattern("cart-cycle-cycle", "cc-even", "cartesian", Axis("wrap", (2,), _even), Axis("wrap", (2,), _even), 3),
        _pattern(
            "cart-cycle-cycle", "cc-odd-even", "cartesian", Axis("wrap", (4, 5), _odd5), Axis("wrap", (2,), _even), 4
        ),
        _pattern("cart-cycle-cycle", "cc-m7-even", "cartesian", Axis("wrap", (7,), _only(7)), Axis("wrap", (2,), _even), 4),
        _pattern(
            "cart-cycle-cycle", "cc-m11-even", "cartesian", Axis("wrap", (11,), _only(11)), Axis("wrap", (2,), _even), 4
        ),
        _pattern("cart-cycle-cycle", "cc-m7-odd", "cartesian", Axis("wrap", (7,), _only(7)), _ODD52, 4),
        _pattern("cart-cycle-cycle", "cc-m11-odd", "cartesian", Axis("wrap", (11,), _only(11)), _ODD52, 4),
        _pattern(
            "tensor-path-path", "tpp-odd", "tensor", Axis("open", (4,), _odd3), Axis("open", (1,), lambda s: s >= 2), 3
        ),
        _pattern("tensor-cycle-path", "tcp-odd", "tensor", Axis("wrap", (1,)), Axis("open", (4,), _odd3), 3),
    )
}


@dataclass(frozen=True)
class Pattern:
    """Mined tiles of one pattern family, ready to render at any covered size."""

    spec: PatternFamily
    tiles: Mapping[tuple[int, int], Tile]

    @property
    def tile(self) -> Tile:
        """The single tile of a one-block pattern."""
        if len(self.tiles) != 1:
            raise InvalidParameterError(f"pattern {self.spec.name} has {len(self.tiles)} tiles")
        return next(iter(self.tiles.values()))

    def supports(self, m: int, n: int) -> bool:
        return self.spec.scheme.supports(m, n)

    def render(self, m: int, n: int) -> Coloring:
        scheme = self.spec.scheme
        coloring = render_tiles(scheme, self.tiles, m, n)
        return _certify(scheme.product_graph(m, n), coloring, scheme.k, f"pattern {scheme.name} at ({m}, {n})")


def _certify(graph: Graph, coloring: Coloring, colors: int, what: str) -> Coloring:
    report = lid_report(graph, coloring)
    if not report.is_lid or report.colors_used != colors:
        raise ConstructionError(
            f"{what}: lid={report.is_lid}, colors={report.colors_used} (want {colors}), "
            f"bad={report.bad_edges[:4]}, improper={report.improper_edges[:4]}"
        )
    return coloring


def _pattern_for(spec: FamilySpec, k: int) -> PatternFamily:
    for p in PATTERNS.values():
        if p.family == spec.family and p.k == k and p.scheme.supports(spec.m, spec.n):
            return p
    raise InvalidParameterError(f"no mined pattern covers {spec.family} ({spec.m}, {spec.n}) with {k} colors")


def mine_periodic_pattern(family: str | FamilySpec, k: int | None = None, budget: int = DEFAULT_BUDGET) -> Pattern:
    """Tiles of a pattern family, loaded from the cache or mined on first use.

    ``family`` is a pattern name from :data:`PATTERNS` or a :class:`FamilySpec`,
    in which case the pattern covering that instance with ``k`` colors is used.
    """
    if isinstance(family, FamilySpec):
        want = family.value() if k is None else k
        entry = _pattern_for(family, want)
    else:
        if family not in PATTERNS:
            raise InvalidParameterError(f"unknown pattern family {family!r}; known: {sorted(PATTERNS)}")
        entry = PATTERNS[family]
        if k is not None and k != entry.k:
            raise InvalidParameterError(f"pattern {family} uses {entry.k} colors, not {k}")
    try:
        tiles = tiles_for(entry.scheme, budget=budget)
    except MiningError as exc:
        raise MiningError(
            f"{exc}: rows {entry.scheme.rows.kind}{entry.scheme.rows.blocks}, "
            f"cols {entry.scheme.cols.kind}{entry.scheme.cols.blocks}, k={entry.k}"
        ) from None
    return Pattern(entry, tiles)


# -- base tiles and composition ---------------------------------------------------


def mine_base_tiles(budget: int = DEFAULT_BUDGET) -> dict[str, Tile]:
    """The tiles T44, T45, T54, T55 (rows x cols), 4-colored and seam-compatible."""
    try:
        tiles = tiles_for(BASE_SCHEME, budget=budget)
    except MiningError as exc:
        raise MiningError(f"base tiles: {exc}") from None
    out = {}
    for key, name in BASE_NAMES.items():
        tile = replace(tiles[key], name=name)
        _certify(BASE_SCHEME.product_graph(*key), tile.coloring(), tile.colors, f"tile {name}")
        out[name] = tile
    return out


def check_base_ties(tiles: Mapping[str, Tile]) -> list[str]:
    """Names of the seam equalities that the base tiles violate."""
    t = tiles
    checks = {
        "T44/T45 first column": t["T44"].col(0) == t["T45"].col(0),
        "T44/T45 last column": t["T44"].col(3) == t["T45"].col(4),
        "T54/T55 first two columns": t["T54"].col(0) == t["T55"].col(0) and t["T54"].col(1) == t["T55"].col(1),
        "T44/T54 first two rows": t["T44"].cells[:2] == t["T54"].cells[:2],
        "T45/T55 first two rows": t["T45"].cells[:2] == t["T55"].cells[:2],
    }
    return [name for name, ok in checks.items() if not ok]


def _sorted_plan(size: int, plan: Sequence[int] | None) -> list[int]:
    if plan is None:
        pair = frobenius_decompose(size, 4, 5)
        return [4] * pair.alpha + [5] * pair.beta
    plan = list(plan)
    if sum(plan) != size or any(b not in (4, 5) for b in plan):
        raise InvalidParameterError(f"plan {plan} does not split {size} into blocks of 4 and 5")
    if plan != sorted(plan):
        raise InvalidParameterError(f"plan {plan}: all 4-blocks must come before 5-blocks")
    return plan


def tile_compose(
    m: int,
    n: int,
    tiles: Mapping[str, Tile],
    row_plan: Sequence[int] | None = None,
    col_plan: Sequence[int] | None = None,
) -> Coloring:
    """4-coloring of ``C_m [] C_n`` laid out from the base tiles.

    Both sides are split into 4-blocks followed by 5-blocks (minimal number of
    4-blocks unless a plan is given). Sizes with no such split raise
    :class:`NoDecompositionError`.
    """
    if m < 4 or n < 4:
        raise InvalidParameterError(f"tile_compose needs m, n >= 4, got ({m}, {n})")
    rows = _sorted_plan(m, row_plan)
    cols = _sorted_plan(n, col_plan)
    by_key = {key: tiles[name] for key, name in BASE_NAMES.items()}
    coloring = compose(by_key, layout_of_plan(rows), layout_of_plan(cols))
    return _certify(BASE_SCHEME.product_graph(m, n), coloring, 4, f"tile composition C{m} [] C{n}")


# -- factor copies -----------------------------------------------------------------


def copy_factor(rows: int, cols: int, g: Coloring, axis: int) -> Coloring:
    """``f(u, v) = g(u)`` (axis 0) or ``g(v)`` (axis 1) on a ``rows x cols`` grid."""
    if axis == 0:
        return Coloring(g[u] for u in range(rows) for _ in range(cols))
    return Coloring(g[v] for _ in range(rows) for v in range(cols))


def _solve(graph: Graph, k: int, what: str) -> Coloring:
    coloring = find_lid_coloring(graph, k)
    if coloring is None:
        raise ConstructionError(f"{what}: no lid-coloring with {k} colors")
    return coloring


@lru_cache(maxsize=None)
def path_coloring(n: int) -> Coloring:
    spec = FamilySpec("path", n)
    return _certify(path_graph(n), _solve(path_graph(n), spec.value(), f"P{n}"), spec.value(), f"P{n}")


@lru_cache(maxsize=None)
def cycle_coloring(n: int) -> Coloring:
    spec = FamilySpec("cycle", n)
    return _certify(cycle_graph(n), _solve(cycle_graph(n), spec.value(), f"C{n}"), spec.value(), f"C{n}")


def tensor_copy_factor(m: int, n: int) -> Coloring:
    """4-coloring of ``C_m x C_n`` (m >= 9 odd, n >= 3 odd) copying a lid-coloring of ``C_m``."""
    if m < 9 or m % 2 == 0 or n < 3 or n % 2 == 0:
        raise InvalidParameterError(f"tensor_copy_factor needs m >= 9 odd and n >= 3 odd, got ({m}, {n})")
    g = _solve(cycle_graph(m), 4, f"C{m}")
    spec = FamilySpec("tensor-cycle-cycle", m, n)
    return _certify(spec_graph(spec), copy_factor(m, n, g, 0), 4, f"factor copy C{m} x C{n}")


def _box_bit(a: int, p: int, q: int, length: int) -> int:
    """2-coloring of the ``q x length`` torus with no monochromatic 2x2 box."""
    if q % 2 == 0:
        return a % 2
    if length % 2 == 0:
        return p % 2
    # q, length odd: alternate constant rows, then two rows that alternate
    # along p with their single repeated pair at different places
    if a <= q - 3:
        return a % 2
    if a == q - 2:
        return 1 - p % 2
    return 1 - (p + 1) % length % 2


def tensor_even_cycle_coloring(m: int, n: int) -> Coloring:
    """3-coloring of ``C_m x C_n`` for even ``m``.

    Even rows get color 1. Each even-row vertex ``(i, j)`` sees the four odd-row
    vertices ``(i +- 1, j +- 1)``, which receive 2 and 3 so that every such
    quadruple holds both. Then every even-row closed neighborhood shows all
    three colors, while an odd-row one shows only two.
    """
    if m < 4 or m % 2 or n < 3:
        raise InvalidParameterError(f"needs m >= 4 even and n >= 3, got ({m}, {n})")
    q = m // 2
    if n % 2:
        length, half = n, (n + 1) // 2
        place = [(0, c * half % n) for c in range(n)]
    else:
        length = n // 2
        place = [(c % 2, c // 2) for c in range(n)]
    colors = []
    for i in range(m):
        for j in range(n):
            if i % 2 == 0:
                colors.append(1)
            else:
                colors.append(2 + _box_bit(i // 2, place[j][1], q, length))
    coloring = Coloring(colors)
    return _certify(spec_graph(FamilySpec("tensor-cycle-cycle", m, n)), coloring, 3, f"C{m} x C{n}")


# -- dispatcher --------------------------------------------------------------------


def spec_graph(spec: FamilySpec) -> Graph:
    """The graph of a family instance, rows indexed by the first factor."""
    if spec.n is None:
        return family_graph(spec.factors[0][0], spec.m)
    (k1, s1), (k2, s2) = spec.factors
    op = cartesian_product if spec.product == "cartesian" else tensor_product
    return op(family_graph(k1, s1), family_graph(k2, s2))[0]


def _transpose(coloring: Coloring, m: int, n: int) -> Coloring:
    """Coloring of the ``m x n`` grid from one of the ``n x m`` grid."""
    perm = ProductLabeling(m, n).swap_permutation()
    return Coloring(coloring[perm[x]] for x in range(m * n))


def _cart_cycle_path(m: int, n: int) -> Coloring:
    return mine_periodic_pattern(FamilySpec("cart-cycle-path", m, n)).render(m, n)


def _cart_cycle_cycle(m: int, n: int, value: int) -> Coloring:
    """Built with rows ``a`` and cols ``b``, where ``(a, b)`` is ``(m, n)`` or its swap."""
    if value == 4 and _odd5(m) and _odd5(n) and m not in (7, 11) and n not in (7, 11):
        return tile_compose(m, n, mine_base_tiles())
    for a, b, swap in ((m, n, False), (n, m, True)):
        spec = FamilySpec("cart-cycle-cycle", a, b)
        try:
            pattern = _pattern_for(spec, value)
        except InvalidParameterError:
            continue
        coloring = mine_periodic_pattern(pattern.name).render(a, b)
        return _transpose(coloring, m, n) if swap else coloring
    raise InvalidParameterError(f"no construction for C{m} [] C{n}")


def _tensor_path_path(m: int, n: int, value: int) -> Coloring:
    if value == 2:
        return _solve(spec_graph(FamilySpec("tensor-path-path", m, n)), 2, f"P{m} x P{n}")
    # copy an odd factor (3 colors) or, with both even, the one with >= 4 vertices
    if m % 2 == 1 or (n % 2 == 0 and m >= 4):
        return copy_factor(m, n, path_coloring(m), 0)
    return copy_factor(m, n, path_coloring(n), 1)


def _tensor_cycle_path(m: int, n: int, value: int) -> Coloring:
    if n % 2 == 1:
        return copy_factor(m, n, path_coloring(n), 1)
    if value == 3 or m not in (3, 5, 7):
        return copy_factor(m, n, cycle_coloring(m), 0)
    if n >= 4:
        return copy_factor(m, n, path_coloring(n), 1)
    # C_m x P_2 with m odd is the cycle C_2m
    return _solve(spec_graph(FamilySpec("tensor-cycle-path", m, n)), 4, f"C{m} x P2")


def _tensor_cycle_cycle(m: int, n: int, value: int) -> Coloring:
    if m % 4 == 0:
        return copy_factor(m, n, cycle_coloring(m), 0)
    if n % 4 == 0:
        return copy_factor(m, n, cycle_coloring(n), 1)
    if m % 2 == 0:
        return tensor_even_cycle_coloring(m, n)
    if n % 2 == 0:
        return _transpose(tensor_even_cycle_coloring(n, m), m, n)
    if m >= 9:
        return tensor_copy_factor(m, n)
    if n >= 9:
        return _transpose(tensor_copy_factor(n, m), m, n)
    return _solve(spec_graph(FamilySpec("tensor-cycle-cycle", m, n)), value, f"C{m} x C{n}")


def construct_family(spec: FamilySpec) -> Coloring:
    """A verified lid-coloring of ``spec`` using exactly its closed-form number of colors."""
    if spec.family not in FAMILIES:
        raise InvalidParameterError(f"unknown family {spec.family!r}")
    value = spec.value()
    m, n = spec.m, spec.n
    if spec.family == "path":
        coloring = path_coloring(m)
    elif spec.family == "cycle":
        coloring = cycle_coloring(m)
    elif spec.family == "cart-cycle-path":
        coloring = _cart_cycle_path(m, n)
    elif spec.family == "cart-cycle-cycle":
        coloring = _cart_cycle_cycle(m, n, value)
    elif spec.family == "tensor-path-path":
        coloring = _tensor_path_path(m, n, value)
    elif spec.family == "tensor-cycle-path":
        coloring = _tensor_cycle_path(m, n, value)
    else:
        coloring = _tensor_cycle_cycle(m, n, value)
    label = spec.family if n is None else f"{spec.family} ({m}, {n})"
    return _certify(spec_graph(spec), coloring, value, label)
