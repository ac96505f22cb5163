"""The symmetric edge polytope P_G as a combinatorial object.

Convention: the oriented edge ``(u, v)`` is the lattice point e_u - e_v, and a
facet function ``f`` cuts out the facet ``sum_v f(v) x_v = 1``.  Hence
``(u, v)`` lies on the facet exactly when ``f(u) - f(v) == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Optional

from .config import DEFAULT_LIMITS, Limits
from .errors import PreconditionError, ResourceError
from .graph import Edge, Graph, is_connected, norm_edge, triangle_edge_set

OrientedEdge = tuple[int, int]
LatticePoint = tuple[int, ...]


@dataclass(frozen=True, order=True)
class FacetFunction:
    """Vertex labelling (index v-1 holds f(v)), translated so that min f = 0."""

    values: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.values[v - 1]

    def height(self, i: int, j: int) -> int:
        """f(i) - f(j): the right-hand side reached by the point e_i - e_j."""
        return self.values[i - 1] - self.values[j - 1]

    def contains(self, u: int, v: int) -> bool:
        return self.values[u - 1] - self.values[v - 1] == 1

    def oriented_edges(self, g: Graph) -> list[OrientedEdge]:
        """Vertices of P_G on this facet, as oriented edges of G(F)."""
        out = []
        for u, v in g.sorted_edges:
            d = self.values[u - 1] - self.values[v - 1]
            if d == 1:
                out.append((u, v))
            elif d == -1:
                out.append((v, u))
        return out


def point(n: int, oe: OrientedEdge) -> LatticePoint:
    u, v = oe
    return tuple(1 if w == u else (-1 if w == v else 0) for w in range(1, n + 1))


def oriented_edges(g: Graph) -> list[OrientedEdge]:
    out = []
    for u, v in g.sorted_edges:
        out += [(u, v), (v, u)]
    return out


def sep_vertices(g: Graph) -> set[LatticePoint]:
    return {point(g.n, oe) for oe in oriented_edges(g)}


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise PreconditionError("operation requires a connected graph")


# ---------------------------------------------------------------- facets


def is_facet_function(g: Graph, values: tuple[int, ...]) -> bool:
    """Both facet conditions: |f(u)-f(v)| <= 1 on edges, unit-difference edges spanning and connected."""
    unit = []
    for u, v in g.edges:
        d = abs(values[u - 1] - values[v - 1])
        if d > 1:
            return False
        if d == 1:
            unit.append((u, v))
    if g.n == 1:
        return False
    nb: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in unit:
        nb[u].append(v)
        nb[v].append(u)
    seen = {1}
    stack = [1]
    while stack:
        x = stack.pop()
        for y in nb[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.n


@lru_cache(maxsize=4096)
def enumerate_facets(g: Graph) -> tuple[FacetFunction, ...]:
    """All facet functions of P_G, in lexicographic order of the value sequence.

    Labels are assigned along a BFS order from vertex 1 with f(1) = 0; every
    later vertex has an already-labelled neighbour, so it has at most three
    candidate values.  Translation classes are then normalised to min 0.
    """
    _require_connected(g)
    if g.n == 1:
        return ()
    order = [1]
    seen = {1}
    for v in order:
        for w in sorted(g.adj[v]):
            if w not in seen:
                seen.add(w)
                order.append(w)
    earlier = {v: [w for w in g.adj[v] if order.index(w) < k] for k, v in enumerate(order)}
    vals = [0] * (g.n + 1)
    found: list[FacetFunction] = []

    def rec(k: int) -> None:
        if k == len(order):
            t = tuple(vals[1:])
            if is_facet_function(g, t):
                lo = min(t)
                found.append(FacetFunction(tuple(x - lo for x in t)))
            return
        v = order[k]
        nbrs = earlier[v]
        base = vals[nbrs[0]]
        for x in (base - 1, base, base + 1):
            if all(abs(vals[w] - x) <= 1 for w in nbrs):
                vals[v] = x
                rec(k + 1)

    rec(1)
    return tuple(sorted(found))


# ---------------------------------------------------------------- edges of P_G


def _in_common_short_cycle(g: Graph, a: OrientedEdge, b: OrientedEdge) -> bool:
    """Is there a directed 3- or 4-cycle of G traversing both oriented edges?"""
    (p, q), (r, s) = a, b
    if q == r and p != s:
        # p -> q -> s then back to p in one or two steps
        return g.has_edge(s, p) or any(x not in (p, q) and g.has_edge(x, p) for x in g.adj[s])
    if s == p and q != r:
        return _in_common_short_cycle(g, b, a)
    if len({p, q, r, s}) == 4:
        # the only 4-cycle arrangement is p q r s
        return g.has_edge(q, r) and g.has_edge(s, p)
    return False


def pair_value(g: Graph, l1: Edge, l2: Edge) -> int:
    """Number of orientation pairs of (l1, l2) not sharing a directed 3- or 4-cycle."""
    l1, l2 = norm_edge(*l1), norm_edge(*l2)
    if l1 not in g.edges or l2 not in g.edges:
        raise PreconditionError("pair_value needs two edges of the graph")
    if l1 == l2:
        return 0
    count = 0
    for a in (l1, l1[::-1]):
        for b in (l2, l2[::-1]):
            if not _in_common_short_cycle(g, a, b):
                count += 1
    return count


def pair_value_by_remark(g: Graph, l1: Edge, l2: Edge) -> int:
    """Structural classification of the same quantity, used as a cross-check."""
    l1, l2 = norm_edge(*l1), norm_edge(*l2)
    if l1 == l2:
        return 0
    shared = set(l1) & set(l2)
    if shared:
        (c,) = shared
        (a,) = set(l1) - shared
        (b,) = set(l2) - shared
        in_triangle = g.has_edge(a, b)
        in_square = any(x not in (a, b, c) and g.has_edge(x, a) and g.has_edge(x, b) for x in g.vertices)
        return 2 if in_triangle or in_square else 4
    (a, b), (c, d) = l1, l2
    squares = int(g.has_edge(b, c) and g.has_edge(d, a)) + int(g.has_edge(b, d) and g.has_edge(c, a))
    return 4 - 2 * squares


def f1_combinatorial(g: Graph) -> int:
    """Edges of P_G counted as oriented-edge pairs outside every directed 3-/4-cycle."""
    _require_connected(g)
    if len(g.edges) < 2:
        raise PreconditionError("combinatorial edge count needs at least two edges")
    return sum(pair_value(g, a, b) for a, b in combinations(g.sorted_edges, 2))


def f1(g: Graph) -> int:
    """f_1(P_G), with the degenerate cases (point, segment) handled directly."""
    m = len(g.edges)
    if m == 0:
        return 0
    if m == 1:
        return 1
    return f1_combinatorial(g)


def f1_geometric(g: Graph, limits: Limits = DEFAULT_LIMITS) -> int:
    """Edges of P_G by the smallest-face criterion on the facet list."""
    _require_connected(g)
    verts = oriented_edges(g)
    if len(verts) > limits.max_geometric_points:
        raise ResourceError(f"{len(verts)} vertices exceed geometric cap {limits.max_geometric_points}")
    facets = enumerate_facets(g)
    masks = []
    for u, v in verts:
        m = 0
        for k, f in enumerate(facets):
            if f.contains(u, v):
                m |= 1 << k
        masks.append(m)
    count = 0
    for x, y in combinations(range(len(verts)), 2):
        common = masks[x] & masks[y]
        if common == 0:
            on_face = len(verts)
        else:
            on_face = sum(1 for m in masks if m & common == common)
        if on_face == 2:
            count += 1
    return count


# ---------------------------------------------------------------- Z-function


@dataclass(frozen=True)
class EdgeRecord:
    F: int
    Z: int
    inE3: bool


def edge_stats(g: Graph) -> dict[Edge, EdgeRecord]:
    _require_connected(g)
    e3 = triangle_edge_set(g)
    out = {}
    for l in g.sorted_edges:
        F = sum(pair_value(g, l, f) for f in g.sorted_edges if f != l)
        Z = F - 2 * (2 * g.n - 5) - 2 * (l in e3)
        out[l] = EdgeRecord(F, Z, l in e3)
    return out


def edge_stats_json(stats: dict[Edge, EdgeRecord]) -> dict[str, dict]:
    return {f"{u}-{v}": {"F": r.F, "Z": r.Z, "inE3": r.inE3} for (u, v), r in sorted(stats.items())}


def z2(g: Graph) -> int:
    """f_1(P_G) - |E|(2|V| - 5) - |E_3(G)|."""
    _require_connected(g)
    m = len(g.edges)
    return f1(g) - m * (2 * g.n - 5) - len(triangle_edge_set(g))


# ---------------------------------------------------------------- visibility


def _deleted(g: Graph, ij: Edge) -> Graph:
    h = g.delete_edge(*ij)
    if not is_connected(h):
        raise PreconditionError(f"deleting {norm_edge(*ij)} disconnects the graph")
    return h


def visible_facets(g: Graph, ij: tuple[int, int]) -> list[tuple[FacetFunction, int]]:
    """Facets of P_{G minus ij} seen from e_i - e_j, with heights f(i) - f(j) >= 2."""
    i, j = ij
    h = _deleted(g, ij)
    out = []
    for f in enumerate_facets(h):
        ht = f.height(i, j)
        if ht >= 2:
            out.append((f, ht))
    return out


def polytope_neighbors(g: Graph, ij: tuple[int, int]) -> int:
    h = _deleted(g, ij)
    seen: set[OrientedEdge] = set()
    for f, _ in visible_facets(g, ij):
        seen.update(f.oriented_edges(h))
    return len(seen)


# ---------------------------------------------------------------- extremal graphs


def extremal_class(g: Graph) -> str:
    """One of ``complete``, ``K_1_1_m``, ``K_2_m`` (m >= 2) or ``none``."""
    _require_connected(g)
    n, m = g.n, len(g.edges)
    if m == n * (n - 1) // 2:
        return "complete"
    if n < 4:
        return "none"
    deg = {v: g.degree(v) for v in g.vertices}
    hubs = [v for v in g.vertices if deg[v] == n - 1]
    if len(hubs) == 2 and m == 2 * (n - 2) + 1:
        return "K_1_1_m"
    if m == 2 * (n - 2):
        hi = [v for v in g.vertices if deg[v] == n - 2]
        for u, v in combinations(hi, 2):
            if g.has_edge(u, v):
                continue
            others = [w for w in g.vertices if w not in (u, v)]
            if all(g.has_edge(u, w) and g.has_edge(v, w) for w in others):
                return "K_2_m"
    return "none"
