"""Immutable simple graphs, path/cycle generators and the two graph products."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class InvalidParameterError(ValueError):
    """Raised when an operation is called outside its stated domain."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored once as sorted pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    _adj: tuple[frozenset[int], ...] = field(repr=False, compare=False, default=())

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InvalidParameterError(f"vertex count must be non-negative, got {n}")
        canon = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge ({u}, {v}) out of range for n={n}")
            canon.add((u, v) if u < v else (v, u))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in canon:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    def __len__(self) -> int:
        return self.n

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return the induced subgraph relabelled to ``0..k-1`` and the old ids."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub_edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(keep), sub_edges), keep

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        return Graph(self.n + other.n, list(self.edges) + [(u + shift, v + shift) for u, v in other.edges])

    # serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, indexing: int = 0) -> "Graph":
        if "n" not in data or "edges" not in data:
            raise InvalidParameterError("graph JSON needs keys 'n' and 'edges'")
        return cls(data["n"], [(u - indexing, v - indexing) for u, v in data["edges"]])

    @classmethod
    def from_json(cls, text: str, indexing: int = 0) -> "Graph":
        return cls.from_dict(json.loads(text), indexing=indexing)


@dataclass(frozen=True)
class ProductLabeling:
    """Row-major coordinates of a product: ``flat = u * cols + v``."""

    rows: int
    cols: int

    def flat(self, u: int, v: int) -> int:
        return u * self.cols + v

    def coords(self, x: int) -> tuple[int, int]:
        return divmod(x, self.cols)

    def swapped(self) -> "ProductLabeling":
        return ProductLabeling(self.cols, self.rows)

    def swap_permutation(self) -> list[int]:
        """``perm[x]`` is the id of ``x``'s swapped coordinates in the swapped labeling."""
        return [v * self.rows + u for u, v in (self.coords(x) for x in range(self.rows * self.cols))]


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError(f"path needs n >= 1, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def family_graph(kind: str, n: int) -> Graph:
    if kind == "path":
        return path_graph(n)
    if kind == "cycle":
        return cycle_graph(n)
    raise InvalidParameterError(f"unknown graph family {kind!r}")


def _check_factors(g: Graph, h: Graph) -> None:
    if g.n == 0 or h.n == 0:
        raise InvalidParameterError("product factors must be non-empty")


def cartesian_product(g: Graph, h: Graph) -> tuple[Graph, ProductLabeling]:
    _check_factors(g, h)
    lab = ProductLabeling(g.n, h.n)
    edges = []
    for u in range(g.n):
        for a, b in h.edges:
            edges.append((lab.flat(u, a), lab.flat(u, b)))
    for v in range(h.n):
        for a, b in g.edges:
            edges.append((lab.flat(a, v), lab.flat(b, v)))
    return Graph(g.n * h.n, edges), lab


def tensor_product(g: Graph, h: Graph) -> tuple[Graph, ProductLabeling]:
    _check_factors(g, h)
    lab = ProductLabeling(g.n, h.n)
    edges = []
    for u1, u2 in g.edges:
        for v1, v2 in h.edges:
            edges.append((lab.flat(u1, v1), lab.flat(u2, v2)))
            edges.append((lab.flat(u1, v2), lab.flat(u2, v1)))
    return Graph(g.n * h.n, edges), lab


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    sides: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.bipartite


def is_bipartite(g: Graph) -> BipartiteResult:
    """BFS 2-coloring; on failure returns an odd closed walk as witness."""
    side = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in sorted(g.neighbors(x)):
                if side[y] == -1:
                    side[y] = 1 - side[x]
                    parent[y] = x
                    queue.append(y)
                elif side[y] == side[x]:
                    return BipartiteResult(False, odd_cycle=_odd_walk(parent, x, y))
    return BipartiteResult(True, sides=tuple(side))


def _odd_walk(parent: list[int], x: int, y: int) -> tuple[int, ...]:
    def chain(v):
        out = [v]
        while parent[v] != -1:
            v = parent[v]
            out.append(v)
        return out

    px, py = chain(x), chain(y)
    common = set(px) & set(py)
    lca = next(v for v in px if v in common)
    left = px[: px.index(lca) + 1]
    right = py[: py.index(lca)]
    return tuple(left[::-1] + right)
