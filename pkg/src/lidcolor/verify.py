"""Properness and locally-identifying checks for vertex colorings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, InvalidParameterError, connected_components


class InvalidColoringError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    """Total map vertex -> positive color. Colors need not be contiguous."""

    colors: tuple[int, ...]

    def __init__(self, colors: Iterable[int]):
        cols = tuple(int(c) for c in colors)
        if any(c < 1 for c in cols):
            raise InvalidColoringError("colors must be positive integers")
        object.__setattr__(self, "colors", cols)

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __iter__(self):
        return iter(self.colors)

    @property
    def color_count(self) -> int:
        return len(set(self.colors))

    def normalized(self) -> "Coloring":
        """Remap colors to ``1..k`` in order of first appearance."""
        remap: dict[int, int] = {}
        for c in self.colors:
            remap.setdefault(c, len(remap) + 1)
        return Coloring(remap[c] for c in self.colors)

    def permuted(self, perm: Sequence[int]) -> "Coloring":
        """Coloring of the relabelled graph where vertex ``v`` became ``perm[v]``."""
        out = [0] * len(self.colors)
        for v, c in enumerate(self.colors):
            out[perm[v]] = c
        return Coloring(out)

    def to_dict(self) -> dict:
        return {"colors": list(self.colors)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Coloring":
        if "colors" not in data:
            raise InvalidColoringError("coloring JSON needs key 'colors'")
        return cls(data["colors"])


@dataclass(frozen=True)
class LidReport:
    proper: bool
    improper_edges: tuple[tuple[int, int], ...]
    bad_edges: tuple[tuple[int, int], ...]
    colors_used: int
    twin_edges: int

    @property
    def is_lid(self) -> bool:
        return self.proper and not self.bad_edges

    def to_dict(self) -> dict:
        return {
            "proper": self.proper,
            "improper_edges": [list(e) for e in self.improper_edges],
            "bad_edges": [list(e) for e in self.bad_edges],
            "colors_used": self.colors_used,
            "twin_edges": self.twin_edges,
            "is_lid": self.is_lid,
        }


def _as_colors(g: Graph, f) -> Sequence[int]:
    colors = f.colors if isinstance(f, Coloring) else tuple(f)
    if len(colors) != g.n:
        raise InvalidColoringError(f"coloring has {len(colors)} entries, graph has {g.n} vertices")
    return colors


def is_proper(g: Graph, f) -> bool:
    colors = _as_colors(g, f)
    return all(colors[u] != colors[v] for u, v in g.edges)


def lid_report(g: Graph, f) -> LidReport:
    colors = _as_colors(g, f)
    closed = [g.closed_neighborhood(v) for v in range(g.n)]
    sets = [frozenset(colors[w] for w in nb) for nb in closed]
    improper, bad = [], []
    twins = 0
    for u, v in g.edges:
        if colors[u] == colors[v]:
            improper.append((u, v))
        if closed[u] == closed[v]:
            twins += 1
        elif sets[u] == sets[v]:
            bad.append((u, v))
    return LidReport(
        proper=not improper,
        improper_edges=tuple(improper),
        bad_edges=tuple(bad),
        colors_used=len(set(colors)),
        twin_edges=twins,
    )


def is_lid(g: Graph, f) -> bool:
    return lid_report(g, f).is_lid


def chi_lid_of_components(g: Graph, per_component_values: Sequence[int]) -> int:
    if g.n == 0:
        raise InvalidParameterError("empty graph has no lid-chromatic number")
    comps = connected_components(g)
    if len(per_component_values) != len(comps):
        raise InvalidParameterError(
            f"{len(per_component_values)} values given for {len(comps)} components"
        )
    return max(per_component_values)
