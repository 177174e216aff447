"""Tiles, block layouts along each product axis, and constrained tile mining.

A *scheme* colors a product of two paths/cycles from a small set of tiles.
Each axis is cut into blocks:

* a ``wrap`` axis (cycle) is a cyclic sequence of blocks drawn from one or
  two sizes, ``alpha`` copies of the first size followed by ``beta`` copies
  of the second;
* an ``open`` axis (path) repeats one period and is truncated at the far end.

The tile for the block pair ``(row block, col block)`` colors every grid cell
that falls in such a pair. The lid condition on an edge only sees colors
within distance two, so a scheme is valid for every size once it is valid on
a set of *covering* instances that contain every seam/boundary window. Mining
ties all copies of a tile cell to one solver variable and searches the
disjoint union of the covering instances.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from ..graph import Graph, InvalidParameterError, cartesian_product, cycle_graph, path_graph, tensor_product
from ..solver import DEFAULT_BUDGET, solve_variables
from ..verify import Coloring, lid_report
from .frobenius import NoDecompositionError, frobenius_decompose
from .generic import ConstructionError

CACHE_ENV = "LIDCOLOR_CACHE_DIR"
DEFAULT_CACHE = ".lidcolor-cache"


class MiningError(RuntimeError):
    """No tile set exists within the searched schemes."""


@dataclass(frozen=True)
class Tile:
    name: str
    cells: tuple[tuple[int, ...], ...]
    row_topology: str = "wrap"
    col_topology: str = "wrap"

    def __post_init__(self):
        if not self.cells or any(len(r) != len(self.cells[0]) for r in self.cells):
            raise InvalidParameterError(f"tile {self.name!r} is not a rectangular grid")
        for t in (self.row_topology, self.col_topology):
            if t not in ("wrap", "open"):
                raise InvalidParameterError(f"unknown topology {t!r}")

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])

    @property
    def colors(self) -> int:
        return len({c for row in self.cells for c in row})

    def row(self, i: int) -> tuple[int, ...]:
        return self.cells[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.cells)

    @property
    def signatures(self) -> dict[str, tuple[int, ...]]:
        return {
            "first_row": self.row(0),
            "last_row": self.row(self.rows - 1),
            "first_col": self.col(0),
            "last_col": self.col(self.cols - 1),
        }

    def coloring(self) -> Coloring:
        return Coloring(c for row in self.cells for c in row)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "rows": self.rows,
            "cols": self.cols,
            "row_topology": self.row_topology,
            "col_topology": self.col_topology,
            "cells": [list(r) for r in self.cells],
            "colors": self.colors,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Tile":
        tile = cls(
            data["name"],
            tuple(tuple(int(c) for c in r) for r in data["cells"]),
            data.get("row_topology", "wrap"),
            data.get("col_topology", "wrap"),
        )
        if tile.rows != data["rows"] or tile.cols != data["cols"]:
            raise InvalidParameterError(f"tile {tile.name!r}: declared shape does not match cells")
        return tile


# -- axes ---------------------------------------------------------------------


@dataclass(frozen=True)
class Axis:
    """How one product axis is cut into tile blocks."""

    kind: str
    blocks: tuple[int, ...]
    accepts: Callable[[int], bool] = field(default=lambda s: True, compare=False)

    def __post_init__(self):
        if self.kind not in ("wrap", "open"):
            raise InvalidParameterError(f"unknown axis kind {self.kind!r}")
        if self.kind == "open" and len(self.blocks) != 1:
            raise InvalidParameterError("an open axis has exactly one period")
        if not 1 <= len(self.blocks) <= 2 or min(self.blocks) < 1:
            raise InvalidParameterError(f"bad block sizes {self.blocks}")

    @property
    def topology(self) -> str:
        return self.kind

    def factor(self, size: int) -> Graph:
        return cycle_graph(size) if self.kind == "wrap" else path_graph(size)

    def plan(self, size: int) -> list[int]:
        """Block sequence for an axis of this size."""
        if self.kind == "open":
            return [self.blocks[0]]
        if len(self.blocks) == 1:
            a = self.blocks[0]
            if size % a:
                raise NoDecompositionError(f"{size} is not a multiple of {a}")
            return [a] * (size // a)
        a, b = self.blocks
        pair = frobenius_decompose(size, a, b)
        return [a] * pair.alpha + [b] * pair.beta

    def layout(self, size: int) -> list[tuple[int, int]]:
        """``(block size, offset in block)`` for every index along the axis."""
        if self.kind == "open":
            p = self.blocks[0]
            return [(p, i % p) for i in range(size)]
        return layout_of_plan(self.plan(size))

    def supports(self, size: int) -> bool:
        if not self.accepts(size):
            return False
        try:
            self.plan(size)
        except (NoDecompositionError, InvalidParameterError):
            return False
        return size >= (3 if self.kind == "wrap" else 1)

    def windows(self, size: int) -> set[tuple]:
        """Every run of four consecutive layout entries (None past a path end)."""
        lay = self.layout(size)
        out = set()
        for i in range(size):
            if self.kind == "wrap":
                out.add(tuple(lay[(i + d) % size] for d in range(-1, 3)))
            else:
                out.add(tuple(lay[i + d] if 0 <= i + d < size else None for d in range(-1, 3)))
        return out

    def covering(self) -> list[list[tuple[int, int]]]:
        """Layouts of instances that together contain every local window.

        An edge check reads four consecutive indices along each axis. Block
        sequences ``a^alpha b^beta`` with minimal ``alpha < b`` stop producing
        new windows once ``beta`` passes the number of blocks a window can
        touch, and open axes once the size passes both ends plus two periods.
        Below that bound sizes are kept greedily when they add a window; sizes
        up to 5 are always kept.
        """
        if self.kind == "open":
            top = 6 + 2 * self.blocks[0] + 2
        else:
            reach = 1 + -(-3 // min(self.blocks))
            if len(self.blocks) == 1:
                top = self.blocks[0] * (reach + 2)
            else:
                a, b = self.blocks
                top = (b - 1) * a + (reach + 2) * b
            top = max(top, 8)
        seen: set[tuple] = set()
        chosen = []
        for size in range(1, top + 1):
            if not self.supports(size):
                continue
            wins = self.windows(size)
            if size <= 5 or not wins <= seen:
                chosen.append(size)
                seen |= wins
        return [self.layout(s) for s in chosen]


def layout_of_plan(plan: Sequence[int]) -> list[tuple[int, int]]:
    return [(blk, off) for blk in plan for off in range(blk)]


@dataclass(frozen=True)
class Scheme:
    """A tile scheme for ``rows-factor (product) cols-factor`` with ``k`` colors."""

    name: str
    product: str
    rows: Axis
    cols: Axis
    k: int
    tie: Callable[[], Iterable[tuple[tuple[int, int, int, int], tuple[int, int, int, int]]]] | None = field(
        default=None, compare=False
    )
    # tiles whose cells are fixed in advance, e.g. taken from another scheme
    given: Callable[[], Mapping[tuple[int, int], Tile]] | None = field(default=None, compare=False)

    def keys(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.rows.blocks for b in self.cols.blocks]

    def supports(self, m: int, n: int) -> bool:
        return self.rows.supports(m) and self.cols.supports(n)

    def tile_name(self, key: tuple[int, int]) -> str:
        return f"{self.name}.r{key[0]}c{key[1]}"

    def product_graph(self, m: int, n: int) -> Graph:
        op = cartesian_product if self.product == "cartesian" else tensor_product
        return op(self.rows.factor(m), self.cols.factor(n))[0]


def _product(kind: str, g: Graph, h: Graph) -> Graph:
    return (cartesian_product if kind == "cartesian" else tensor_product)(g, h)[0]


def compose(tiles: Mapping[tuple[int, int], Tile], row_layout, col_layout) -> Coloring:
    cells = []
    for rb, ro in row_layout:
        for cb, co in col_layout:
            cells.append(tiles[(rb, cb)].cells[ro][co])
    return Coloring(cells)


def render_tiles(scheme: Scheme, tiles: Mapping[tuple[int, int], Tile], m: int, n: int) -> Coloring:
    """Lay the scheme's tiles over ``m x n`` (not verified)."""
    if not scheme.supports(m, n):
        raise InvalidParameterError(f"scheme {scheme.name} does not cover ({m}, {n})")
    return compose(tiles, scheme.rows.layout(m), scheme.cols.layout(n))


# -- mining -------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def mine_scheme(scheme: Scheme, budget: int = DEFAULT_BUDGET) -> dict[tuple[int, int], Tile] | None:
    """Search tiles for ``scheme`` valid on all covering instances; None if none exist."""
    keys = scheme.keys()
    cell_id: dict[tuple[int, int, int, int], int] = {}
    for a, b in keys:
        for r in range(a):
            for c in range(b):
                cell_id[(a, b, r, c)] = len(cell_id)
    uf = _UnionFind(len(cell_id))
    if scheme.tie is not None:
        for x, y in scheme.tie():
            uf.union(cell_id[x], cell_id[y])
    roots = sorted({uf.find(i) for i in range(len(cell_id))})
    var_index = {r: i for i, r in enumerate(roots)}
    var_of_cell = [var_index[uf.find(i)] for i in range(len(cell_id))]
    fixed: dict[int, int] = {}
    if scheme.given is not None:
        for (a, b), tile in scheme.given().items():
            if (tile.rows, tile.cols) != (a, b):
                raise InvalidParameterError(f"given tile for block {(a, b)} has shape {tile.rows}x{tile.cols}")
            for r in range(a):
                for c in range(b):
                    x = var_of_cell[cell_id[(a, b, r, c)]]
                    if fixed.setdefault(x, tile.cells[r][c]) != tile.cells[r][c]:
                        return None

    n_total = 0
    edges: list[tuple[int, int]] = []
    var_of: list[int] = []
    for rl in scheme.rows.covering():
        for cl in scheme.cols.covering():
            m, n = len(rl), len(cl)
            if scheme.rows.kind == "wrap" and m < 3 or scheme.cols.kind == "wrap" and n < 3:
                continue
            g = _product(scheme.product, scheme.rows.factor(m), scheme.cols.factor(n))
            edges.extend((u + n_total, v + n_total) for u, v in g.edges)
            for rb, ro in rl:
                for cb, co in cl:
                    var_of.append(var_of_cell[cell_id[(rb, cb, ro, co)]])
            n_total += g.n
    union = Graph(n_total, edges)
    colors, _ = solve_variables(union, scheme.k, var_of=var_of, fixed=fixed, budget=budget)
    if colors is None:
        return None
    tiles = {}
    for a, b in keys:
        cells = tuple(
            tuple(colors[var_of_cell[cell_id[(a, b, r, c)]]] for c in range(b)) for r in range(a)
        )
        tiles[(a, b)] = Tile(scheme.tile_name((a, b)), cells, scheme.rows.kind, scheme.cols.kind)
    return tiles


def verify_scheme(scheme: Scheme, tiles, sizes: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Sizes in ``sizes`` on which the composed coloring fails (empty when all pass)."""
    failures = []
    for m, n in sizes:
        coloring = render_tiles(scheme, tiles, m, n)
        if not lid_report(scheme.product_graph(m, n), coloring).is_lid:
            failures.append((m, n))
    return failures


# -- cache --------------------------------------------------------------------


def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE))


def _tile_path(name: str) -> Path:
    return cache_dir() / f"{name}.json"


def load_tiles(scheme: Scheme) -> dict[tuple[int, int], Tile] | None:
    tiles = {}
    for key in scheme.keys():
        path = _tile_path(scheme.tile_name(key))
        if not path.exists():
            return None
        tiles[key] = Tile.from_dict(json.loads(path.read_text()))
    return tiles


def store_tiles(tiles: Mapping[tuple[int, int], Tile]) -> None:
    """Write each tile once; an existing file is never overwritten."""
    directory = cache_dir()
    directory.mkdir(parents=True, exist_ok=True)
    for tile in tiles.values():
        final = _tile_path(tile.name)
        if final.exists():
            continue
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(tile.to_dict(), fh)
        try:
            os.link(tmp, final)
        except FileExistsError:
            pass
        finally:
            os.unlink(tmp)


def tiles_for(scheme: Scheme, budget: int = DEFAULT_BUDGET) -> dict[tuple[int, int], Tile]:
    """Cached tiles for ``scheme``, mining them on first use."""
    tiles = load_tiles(scheme)
    if tiles is not None:
        return tiles
    tiles = mine_scheme(scheme, budget=budget)
    if tiles is None:
        raise MiningError(f"no tiles exist for scheme {scheme.name}")
    store_tiles(tiles)
    return load_tiles(scheme) or tiles


def certified(graph: Graph, coloring: Coloring, colors: int, what: str) -> Coloring:
    report = lid_report(graph, coloring)
    if not report.is_lid or report.colors_used > colors:
        raise ConstructionError(
            f"{what}: lid={report.is_lid}, colors={report.colors_used} (want {colors}), "
            f"bad={report.bad_edges[:4]}, improper={report.improper_edges[:4]}"
        )
    return coloring
