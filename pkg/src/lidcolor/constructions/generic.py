"""Product colorings built from proper colorings of the two factors."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import Graph, InvalidParameterError, cartesian_product, is_connected, tensor_product
from ..solver import chi_exact
from ..verify import Coloring, is_proper, lid_report


class ConstructionError(RuntimeError):
    """A construction produced a coloring that failed verification."""


@dataclass(frozen=True)
class FactorColorings:
    f_g: Coloring
    f_h: Coloring

    @property
    def k1(self) -> int:
        return max(self.f_g.colors)

    @property
    def k2(self) -> int:
        return max(self.f_h.colors)

    def check(self, g: Graph, h: Graph) -> None:
        if not is_proper(g, self.f_g):
            raise InvalidParameterError("f_G is not a proper coloring of G")
        if not is_proper(h, self.f_h):
            raise InvalidParameterError("f_H is not a proper coloring of H")

    @classmethod
    def optimal(cls, g: Graph, h: Graph) -> "FactorColorings":
        """Deterministic chromatic-number colorings of both factors."""
        return cls(chi_exact(g).certificate, chi_exact(h).certificate)


def _check_cartesian(g: Graph, h: Graph, fc: FactorColorings) -> None:
    for name, x in (("G", g), ("H", h)):
        if x.n < 2 or not is_connected(x):
            raise InvalidParameterError(f"{name} must be connected with at least two vertices")
    fc.check(g, h)


def flatten(pair: tuple[int, int], k2: int) -> int:
    a, b = pair
    return (a - 1) * k2 + b


def pair_coloring(g: Graph, h: Graph, fc: FactorColorings) -> list[tuple[int, int]]:
    """``(f_G(u), f_H(v))`` for every product vertex in row-major order."""
    return [(fc.f_g[u], fc.f_h[v]) for u in range(g.n) for v in range(h.n)]


def _certify(product: Graph, coloring: Coloring, bound: int, what: str) -> Coloring:
    report = lid_report(product, coloring)
    if not report.is_lid or report.colors_used > bound:
        raise ConstructionError(
            f"{what}: lid={report.is_lid}, colors={report.colors_used}, bound={bound}, "
            f"bad={report.bad_edges[:5]}, improper={report.improper_edges[:5]}"
        )
    return coloring


def generic_cartesian_coloring(g: Graph, h: Graph, fc: FactorColorings) -> Coloring:
    _check_cartesian(g, h, fc)
    pairs = pair_coloring(g, h, fc)
    coloring = Coloring(flatten(p, fc.k2) for p in pairs)
    product, _ = cartesian_product(g, h)
    return _certify(product, coloring, fc.k1 * fc.k2, "pair coloring of G [] H")


def merged_cartesian_coloring(g: Graph, h: Graph, fc: FactorColorings) -> Coloring:
    """Pair coloring with the class ``(k1, k2)`` folded into ``(1, 1)``."""
    _check_cartesian(g, h, fc)
    top = (fc.k1, fc.k2)
    pairs = [(1, 1) if p == top else p for p in pair_coloring(g, h, fc)]
    coloring = Coloring(flatten(p, fc.k2) for p in pairs)
    product, _ = cartesian_product(g, h)
    return _certify(product, coloring, fc.k1 * fc.k2 - 1, "merged coloring of G [] H")


@dataclass
class RepairState:
    frozen: set[int] = field(default_factory=set)
    eligible: set[int] = field(default_factory=set)
    repairs: list[tuple[int, int]] = field(default_factory=list)


def algorithm1_trace(
    g: Graph, h: Graph, fc: FactorColorings
) -> tuple[Graph, list[tuple[int, int]], list[tuple[int, int]], RepairState]:
    """Run the repair phase; returns ``(product, initial pairs, final pairs, state)``.

    Badness is always judged against the initial pair coloring. Bad edges are
    repaired in sorted order while both endpoints are still eligible.
    """
    for name, x in (("G", g), ("H", h)):
        if x.n < 1 or not is_connected(x):
            raise InvalidParameterError(f"{name} must be connected")
    if max(g.n, h.n) < 3:
        raise InvalidParameterError("G or H must have at least three vertices")
    fc.check(g, h)
    product, lab = tensor_product(g, h)
    initial = pair_coloring(g, h, fc)
    final = list(initial)
    closed = [product.closed_neighborhood(x) for x in range(product.n)]
    sets = [frozenset(initial[w] for w in nb) for nb in closed]
    state = RepairState(eligible=set(range(product.n)))
    for x, y in product.edges:
        if closed[x] == closed[y] or sets[x] != sets[y]:
            continue
        if x not in state.eligible or y not in state.eligible:
            continue
        (u1, v1), (u2, v2) = lab.coords(x), lab.coords(y)
        final[x] = (fc.f_g[u1], fc.f_h[v2])
        final[y] = (fc.f_g[u2], fc.f_h[v1])
        state.repairs.append((x, y))
        state.frozen |= closed[x] | closed[y]
        state.eligible -= state.frozen
    return product, initial, final, state


def tensor_algorithm1(g: Graph, h: Graph, fc: FactorColorings) -> Coloring:
    product, _, final, _ = algorithm1_trace(g, h, fc)
    coloring = Coloring(flatten(p, fc.k2) for p in final)
    return _certify(product, coloring, fc.k1 * fc.k2, "repair coloring of G x H")
