"""Exact backtracking search for proper and locally-identifying colorings.

The search core works over *variables*: every vertex belongs to one variable
and all vertices of a variable share its color. Plain graph problems use one
variable per vertex; pattern mining ties the vertices of many product copies
to a small set of tile cells.

Pruning is sound only:

* properness is forward-checked on variable domains;
* an edge ``uv`` with ``N[u] != N[v]`` is refuted once both closed
  neighborhoods are fully colored with equal color sets, or earlier when both
  already contain every one of the ``k`` colors;
* colors not fixed by constraints are interchangeable, so a variable may only
  open the lowest unused free color.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from .graph import Graph, InvalidParameterError, connected_components
from .verify import Coloring, is_proper, lid_report

DEFAULT_BUDGET = 10**9


class ResourceLimitError(RuntimeError):
    """The node budget was exhausted before the search finished."""


@dataclass(frozen=True)
class SolveResult:
    value: int
    certificate: Coloring
    exhausted_below: bool
    nodes: int = 0


class _Search:
    def __init__(
        self,
        graph: Graph,
        k: int,
        var_of: Sequence[int] | None = None,
        fixed: Mapping[int, int] | None = None,
        lid: bool = True,
        order: Sequence[int] | None = None,
        budget: int = DEFAULT_BUDGET,
    ):
        n = graph.n
        self.k = k
        self.full = ((1 << (k + 1)) - 1) & ~1
        self.budget = budget
        self.nodes = 0
        self.lid = lid
        if var_of is None:
            var_of = list(range(n))
        self.var_of = list(var_of)
        nvar = max(self.var_of, default=-1) + 1
        self.nvar = nvar
        members: list[list[int]] = [[] for _ in range(nvar)]
        for v, x in enumerate(self.var_of):
            members[x].append(v)
        self.members = [tuple(m) for m in members]

        self.infeasible = False
        var_nbrs: list[set[int]] = [set() for _ in range(nvar)]
        for u, v in graph.edges:
            a, b = self.var_of[u], self.var_of[v]
            if a == b:
                self.infeasible = True
            var_nbrs[a].add(b)
            var_nbrs[b].add(a)
        self.var_nbrs = [tuple(sorted(s)) for s in var_nbrs]

        closed = [tuple(sorted(graph.closed_neighborhood(v))) for v in range(n)]
        self.closed = closed
        touching: list[list[tuple[int, int]]] = [[] for _ in range(nvar)]
        if lid:
            for u, v in graph.edges:
                if closed[u] == closed[v]:
                    continue
                vars_in = {self.var_of[w] for w in closed[u]} | {self.var_of[w] for w in closed[v]}
                for x in vars_in:
                    touching[x].append((u, v))
        self.touching = [tuple(t) for t in touching]

        self.fixed = dict(fixed or {})
        for x, c in self.fixed.items():
            if not 1 <= c <= k:
                self.infeasible = True
        fixed_colors = sorted(set(self.fixed.values()))
        self.fixed_bits = 0
        for c in fixed_colors:
            self.fixed_bits |= 1 << c
        self.free_colors = [c for c in range(1, k + 1) if c not in set(fixed_colors)]

        if order is None:
            order = range(nvar)
        order = [x for x in order if x not in self.fixed]
        self.order = order
        self.vcolor = [0] * n
        self.xcolor = [0] * nvar
        self.forb_cnt = [[0] * (k + 1) for _ in range(nvar)]
        self.forb = [0] * nvar

    # -- state updates -------------------------------------------------------

    def _set(self, x: int, c: int) -> None:
        self.xcolor[x] = c
        for v in self.members[x]:
            self.vcolor[v] = c
        bit = 1 << c
        for y in self.var_nbrs[x]:
            cnt = self.forb_cnt[y]
            cnt[c] += 1
            if cnt[c] == 1:
                self.forb[y] |= bit

    def _unset(self, x: int, c: int) -> None:
        self.xcolor[x] = 0
        for v in self.members[x]:
            self.vcolor[v] = 0
        bit = 1 << c
        for y in self.var_nbrs[x]:
            cnt = self.forb_cnt[y]
            cnt[c] -= 1
            if cnt[c] == 0:
                self.forb[y] &= ~bit

    def _consistent(self, x: int) -> bool:
        xcolor, forb, full = self.xcolor, self.forb, self.full
        for y in self.var_nbrs[x]:
            if xcolor[y] == 0 and not (full & ~forb[y]):
                return False
            if xcolor[y] == xcolor[x]:
                return False
        if not self.lid:
            return True
        vcolor, closed = self.vcolor, self.closed
        for u, v in self.touching[x]:
            mu = 0
            open_u = False
            for w in closed[u]:
                c = vcolor[w]
                if c:
                    mu |= 1 << c
                else:
                    open_u = True
            mv = 0
            open_v = False
            for w in closed[v]:
                c = vcolor[w]
                if c:
                    mv |= 1 << c
                else:
                    open_v = True
            if mu == mv and (mu == full or not (open_u or open_v)):
                return False
        return True

    # -- search --------------------------------------------------------------

    def prepare(self) -> bool:
        """Apply the fixed assignment; False if it is already contradictory."""
        if self.infeasible:
            return False
        for x, c in self.fixed.items():
            if not self.xcolor[x]:
                self._set(x, c)
        return all(self._consistent(x) for x in self.fixed)

    def run(self) -> list[int] | None:
        if not self.prepare():
            return None
        if not self.order:
            return list(self.xcolor)
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 4 * len(self.order) + 1000))
        try:
            ok = self._descend(0, 0)
        finally:
            sys.setrecursionlimit(limit)
        return list(self.xcolor) if ok else None

    def _descend(self, depth: int, nfree: int) -> bool:
        x = self.order[depth]
        allowed = self.full & ~self.forb[x]
        last = depth + 1 == len(self.order)
        candidates = [c for c in range(1, self.k + 1) if self.fixed_bits >> c & 1]
        candidates += self.free_colors[: nfree + 1]
        candidates.sort()
        for c in candidates:
            if not allowed >> c & 1:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise ResourceLimitError(f"node budget {self.budget} exceeded")
            self._set(x, c)
            if self._consistent(x):
                grew = nfree < len(self.free_colors) and c == self.free_colors[nfree]
                if last or self._descend(depth + 1, nfree + 1 if grew else nfree):
                    return True
            self._unset(x, c)
        return False


def solve_variables(
    graph: Graph,
    k: int,
    var_of: Sequence[int] | None = None,
    fixed: Mapping[int, int] | None = None,
    lid: bool = True,
    order: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> tuple[list[int] | None, int]:
    """Low-level entry: color variables so the induced vertex coloring is valid.

    Returns ``(variable colors or None, nodes explored)``.
    """
    if k < 1:
        raise InvalidParameterError(f"k must be positive, got {k}")
    search = _Search(graph, k, var_of=var_of, fixed=fixed, lid=lid, order=order, budget=budget)
    result = search.run()
    return result, search.nodes


def _split_prefixes(graph: Graph, k: int, lid: bool, depth: int, fixed: Mapping[int, int]):
    """Enumerate consistent symmetry-reduced assignments of the first ``depth`` vertices."""
    search = _Search(graph, k, fixed=fixed, lid=lid)
    if not search.prepare():
        return []
    out = []
    order = search.order[:depth]

    def rec(i: int, nfree: int):
        if i == len(order):
            out.append({x: search.xcolor[x] for x in order[:i]})
            return
        x = order[i]
        allowed = search.full & ~search.forb[x]
        cands = sorted([c for c in range(1, k + 1) if search.fixed_bits >> c & 1] + search.free_colors[: nfree + 1])
        for c in cands:
            if not allowed >> c & 1:
                continue
            search._set(x, c)
            if search._consistent(x):
                grew = nfree < len(search.free_colors) and c == search.free_colors[nfree]
                rec(i + 1, nfree + 1 if grew else nfree)
            search._unset(x, c)

    rec(0, 0)
    return out


def _solve_job(args):
    graph, k, fixed, lid, budget = args
    colors, nodes = solve_variables(graph, k, fixed=fixed, lid=lid, budget=budget)
    return colors, nodes


def _find(graph: Graph, k: int, constraints, lid: bool, budget: int, jobs: int) -> tuple[Coloring | None, int]:
    fixed = dict(constraints or {})
    for v in fixed:
        if not 0 <= v < graph.n:
            raise InvalidParameterError(f"constraint on unknown vertex {v}")
    if jobs <= 1 or graph.n < 8:
        colors, nodes = solve_variables(graph, k, fixed=fixed, lid=lid, budget=budget)
        return (Coloring(colors) if colors is not None else None), nodes
    prefixes = _split_prefixes(graph, k, lid, depth=min(6, graph.n), fixed=fixed)
    tasks = [(graph, k, {**fixed, **p}, lid, budget) for p in prefixes]
    total = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # results are consumed in prefix order, so the certificate is deterministic
        for colors, nodes in pool.map(_solve_job, tasks):
            total += nodes
            if total > budget:
                raise ResourceLimitError(f"node budget {budget} exceeded")
            if colors is not None:
                pool.shutdown(wait=False, cancel_futures=True)
                return Coloring(colors), total
    return None, total


def find_lid_coloring(
    graph: Graph,
    k: int,
    constraints: Mapping[int, int] | None = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> Coloring | None:
    """A lid-coloring with at most ``k`` colors extending ``constraints``, or None."""
    if k < 1:
        raise InvalidParameterError(f"k must be positive, got {k}")
    coloring, _ = _find(graph, k, constraints, True, budget, jobs)
    if coloring is not None:
        assert lid_report(graph, coloring).is_lid
    return coloring


def find_proper_coloring(graph: Graph, k: int, budget: int = DEFAULT_BUDGET) -> Coloring | None:
    coloring, _ = _find(graph, k, None, False, budget, 1)
    return coloring


def _component_search(graph: Graph, lid: bool, budget: int, max_k: int | None, jobs: int) -> SolveResult:
    comps = connected_components(graph)
    colors = [0] * graph.n
    best = 0
    exhausted = True
    nodes = 0
    for comp in comps:
        sub, ids = graph.induced_subgraph(comp)
        k = 1 if sub.m == 0 else 2
        while True:
            if max_k is not None and k > max_k:
                raise ResourceLimitError(f"no coloring found with at most {max_k} colors")
            found, used = _find(sub, k, None, lid, budget - nodes, jobs)
            nodes += used
            if found is not None:
                break
            k += 1
        for local, v in enumerate(ids):
            colors[v] = found[local]
        best = max(best, k)
    certificate = Coloring(colors)
    if lid:
        assert lid_report(graph, certificate).is_lid
    else:
        assert is_proper(graph, certificate)
    return SolveResult(best, certificate, exhausted, nodes)


def chi_lid_exact(
    graph: Graph, budget: int = DEFAULT_BUDGET, max_k: int | None = None, jobs: int = 1
) -> SolveResult:
    """Lid-chromatic number with certificate; every smaller k is refuted by exhaustion."""
    if graph.n == 0:
        raise InvalidParameterError("graph must be non-empty")
    return _component_search(graph, True, budget, max_k, jobs)


def chi_exact(
    graph: Graph, budget: int = DEFAULT_BUDGET, max_k: int | None = None, jobs: int = 1
) -> SolveResult:
    """Chromatic number with a proper-coloring certificate."""
    if graph.n == 0:
        raise InvalidParameterError("graph must be non-empty")
    return _component_search(graph, False, budget, max_k, jobs)


def certify_no_lid_coloring(graph: Graph, k: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> bool:
    """True iff exhaustive search shows no lid-coloring with at most ``k`` colors."""
    if k < 1:
        raise InvalidParameterError(f"k must be positive, got {k}")
    nodes = 0
    for comp in connected_components(graph):
        sub, _ = graph.induced_subgraph(comp)
        found, used = _find(sub, k, None, True, budget - nodes, jobs)
        nodes += used
        if found is None:
            return True
    return False
