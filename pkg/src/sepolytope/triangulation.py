"""HJM unimodular triangulations of symmetric edge polytopes and generic complex tools.

Faces are frozensets of labels: an oriented edge ``(u, v)`` (the point
e_u - e_v), the origin ``"O"`` or a cone apex ``"A"``.  Non-faces come from
the leading monomials of the degrevlex Groebner basis of the toric ideal:

* even cycle C = 2k, either orientation: any k edges along the orientation,
  avoiding the order-smallest edge of C;
* odd cycle C = 2k+1, either orientation: any k+1 edges along the orientation;
* both orientations of one edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence, Union

from .config import DEFAULT_LIMITS, Limits
from .errors import PreconditionError
from .geometry import FacetFunction, OrientedEdge, enumerate_facets, is_facet_function, visible_facets
from .graph import Edge, Graph, cycle_edges, enumerate_cycles, is_connected, norm_edge, shortest_path
from .poly import IntPolynomial

Label = Union[OrientedEdge, str]
Face = frozenset
ORIGIN = "O"
APEX = "A"


def label_key(x: Label):
    return (0, x) if isinstance(x, str) else (1, x)


def label_str(x: Label) -> str:
    return x if isinstance(x, str) else f"{x[0]}>{x[1]}"


def parse_label(s: str) -> Label:
    if s in (ORIGIN, APEX):
        return s
    u, v = s.split(">")
    return (int(u), int(v))


def sorted_face(face: Iterable[Label]) -> list[Label]:
    return sorted(face, key=label_key)


# ---------------------------------------------------------------- simplicial complexes


class SimplicialComplex:
    """Finite simplicial complex stored by its maximal faces."""

    def __init__(self, facets: Iterable[Iterable[Label]], ground: Optional[Iterable[Label]] = None) -> None:
        fs = {frozenset(f) for f in facets}
        by_size = sorted(fs, key=len, reverse=True)
        kept: list[frozenset] = []
        for f in by_size:
            if not any(f < k for k in kept):
                kept.append(f)
        self.facets: tuple[frozenset, ...] = tuple(sorted(kept, key=lambda f: sorted_face(f)))
        labels = set().union(*self.facets) if self.facets else set()
        if ground is not None:
            labels |= set(ground)
        self.ground: frozenset = frozenset(labels)

    @cached_property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    @cached_property
    def faces(self) -> frozenset[frozenset]:
        out: set[frozenset] = set()
        for f in self.facets:
            if f in out:
                continue
            items = sorted_face(f)
            for r in range(len(items) + 1):
                for sub in combinations(items, r):
                    out.add(frozenset(sub))
        return frozenset(out)

    def __contains__(self, face: Iterable[Label]) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        """(f_-1, f_0, ..., f_dim)."""
        counts = [0] * (self.dim + 2)
        for face in self.faces:
            counts[len(face)] += 1
        return tuple(counts)

    def subcomplex(self, facets: Iterable[Iterable[Label]]) -> "SimplicialComplex":
        return SimplicialComplex(facets)

    def to_json(self) -> dict:
        return {
            "ground": [label_str(x) for x in sorted_face(self.ground)],
            "facets": [[label_str(x) for x in sorted_face(f)] for f in self.facets],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        return cls(
            [[parse_label(x) for x in f] for f in data["facets"]],
            ground=[parse_label(x) for x in data.get("ground", [])],
        )

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, facets={len(self.facets)})"


def h_polynomial(c: SimplicialComplex) -> IntPolynomial:
    """h(t) = sum_i f_(i-1) t^i (1-t)^(D-i), D = dim + 1; pure complexes only."""
    if not c.is_pure():
        raise PreconditionError("h-polynomial requested for a non-pure complex")
    D = c.dim + 1
    f = c.f_vector
    h = [0] * (D + 1)
    for i in range(D + 1):
        if f[i] == 0:
            continue
        # expand t^i (1-t)^(D-i)
        for k in range(D - i + 1):
            h[i + k] += f[i] * comb(D - i, k) * (-1) ** k
    return IntPolynomial(h)


def link(c: SimplicialComplex, face: Iterable[Label]) -> SimplicialComplex:
    face = frozenset(face)
    if not face:
        return c
    containing = [f - face for f in c.facets if face <= f]
    if not containing:
        raise PreconditionError(f"{sorted_face(face)} is not a face")
    return SimplicialComplex(containing)


def cone_complex(gamma: SimplicialComplex, apex: Label = APEX) -> SimplicialComplex:
    if apex in gamma.ground:
        raise PreconditionError(f"apex label {apex!r} already in the ground set")
    return SimplicialComplex([f | {apex} for f in gamma.facets], ground=gamma.ground | {apex})


# ---------------------------------------------------------------- edge orders


@dataclass(frozen=True)
class EdgeOrder:
    edges: tuple[Edge, ...]

    @cached_property
    def rank(self) -> dict[Edge, int]:
        return {e: k + 1 for k, e in enumerate(self.edges)}

    def __post_init__(self) -> None:
        if len(set(self.edges)) != len(self.edges):
            raise PreconditionError("edge order repeats an edge")


def default_order(g: Graph, ij: Optional[tuple[int, int]] = None) -> EdgeOrder:
    """Lexicographic order, or, given ``ij``, the edges of G minus ij with a
    shortest i-j path placed first (in path order)."""
    if ij is None:
        return EdgeOrder(g.sorted_edges)
    i, j = ij
    h = g.delete_edge(i, j)
    if not is_connected(h):
        raise PreconditionError(f"deleting {norm_edge(i, j)} disconnects the graph")
    path = shortest_path(h, i, j)
    first = [norm_edge(a, b) for a, b in zip(path, path[1:])]
    rest = [e for e in h.sorted_edges if e not in set(first)]
    return EdgeOrder(tuple(first + rest))


# ---------------------------------------------------------------- HJM triangulation


class HJM:
    """Face oracle of the HJM triangulation of P_G for a fixed edge order.

    For every (cycle, orientation) we keep the threshold at which the oriented
    edges along it, minus the smallest edge for even cycles, form a non-face.
    """

    def __init__(self, g: Graph, order: Optional[EdgeOrder] = None, limits: Limits = DEFAULT_LIMITS) -> None:
        self.g = g
        self.order = order if order is not None else default_order(g)
        if set(self.order.edges) != set(g.edges):
            raise PreconditionError("edge order does not match the graph's edges")
        self.cycles = enumerate_cycles(g, limits=limits)
        rank = self.order.rank
        self.thresholds: list[int] = []
        self.watch: dict[OrientedEdge, list[int]] = {}
        for cyc in self.cycles:
            L = len(cyc)
            smallest = min(cycle_edges(cyc), key=rank.__getitem__)
            for seq in (cyc, cyc[::-1]):
                cid = len(self.thresholds)
                self.thresholds.append(L // 2 if L % 2 == 0 else L // 2 + 1)
                for a, b in zip(seq, seq[1:] + seq[:1]):
                    if L % 2 == 0 and norm_edge(a, b) == smallest:
                        continue
                    self.watch.setdefault((a, b), []).append(cid)

    def is_face(self, face: Iterable[Label]) -> bool:
        counts: dict[int, int] = {}
        edges = [x for x in face if not isinstance(x, str)]
        present = set(edges)
        for u, v in edges:
            if (v, u) in present:
                return False
            for cid in self.watch.get((u, v), ()):
                c = counts.get(cid, 0) + 1
                if c >= self.thresholds[cid]:
                    return False
                counts[cid] = c
        return True

    def minimal_nonfaces(self) -> set[frozenset]:
        """Explicit inclusion-minimal non-faces (small graphs only)."""
        rank = self.order.rank
        listed: set[frozenset] = set()
        for u, v in self.g.edges:
            listed.add(frozenset({(u, v), (v, u)}))
        for cyc in self.cycles:
            L = len(cyc)
            smallest = min(cycle_edges(cyc), key=rank.__getitem__)
            for seq in (cyc, cyc[::-1]):
                arcs = list(zip(seq, seq[1:] + seq[:1]))
                if L % 2 == 0:
                    pool = [a for a in arcs if norm_edge(*a) != smallest]
                    size = L // 2
                else:
                    pool = arcs
                    size = L // 2 + 1
                for sub in combinations(pool, size):
                    listed.add(frozenset(sub))
        minimal = set()
        for s in listed:
            items = sorted(s)
            if not any(
                frozenset(sub) in listed for r in range(1, len(items)) for sub in combinations(items, r)
            ):
                minimal.add(s)
        return minimal

    def spanning_tree_faces(self, arcs: Sequence[OrientedEdge]) -> list[frozenset]:
        """Oriented spanning trees inside ``arcs`` (one orientation per edge) that are faces."""
        n = self.g.n
        need = n - 1
        arcs = list(arcs)
        thresholds = self.thresholds
        watch = self.watch
        counts: dict[int, int] = {}
        comp = list(range(n + 1))
        chosen: list[OrientedEdge] = []
        out: list[frozenset] = []

        def find(x: int) -> int:
            while comp[x] != x:
                x = comp[x]
            return x

        def rec(k: int) -> None:
            if len(chosen) == need:
                out.append(frozenset(chosen))
                return
            if len(arcs) - k < need - len(chosen):
                return
            u, v = arcs[k]
            ru, rv = find(u), find(v)
            if ru != rv:
                cids = watch.get((u, v), ())
                if all(counts.get(c, 0) + 1 < thresholds[c] for c in cids):
                    for c in cids:
                        counts[c] = counts.get(c, 0) + 1
                    comp[ru] = rv
                    chosen.append((u, v))
                    rec(k + 1)
                    chosen.pop()
                    comp[ru] = ru
                    for c in cids:
                        counts[c] -= 1
            rec(k + 1)

        rec(0)
        return out

    def facet_simplices(self, f: FacetFunction) -> list[frozenset]:
        return self.spanning_tree_faces(f.oriented_edges(self.g))

    @cached_property
    def boundary(self) -> SimplicialComplex:
        simplices = []
        for f in enumerate_facets(self.g):
            simplices += self.facet_simplices(f)
        return SimplicialComplex(simplices)

    @cached_property
    def full(self) -> SimplicialComplex:
        """Every maximal cell is the origin joined with a boundary simplex."""
        if self.g.n == 1:
            return SimplicialComplex([[ORIGIN]])
        return SimplicialComplex([s | {ORIGIN} for s in self.boundary.facets])


def is_face(s: Iterable[Label], nonfaces: Iterable[frozenset]) -> bool:
    """True iff ``s`` contains no listed non-face; the origin never obstructs."""
    core = frozenset(x for x in s if not isinstance(x, str))
    return not any(nf <= core for nf in nonfaces)


def minimal_nonfaces(g: Graph, order: Optional[EdgeOrder] = None) -> set[frozenset]:
    return HJM(g, order).minimal_nonfaces()


def facet_triangulation(g: Graph, f: FacetFunction, order: Optional[EdgeOrder] = None) -> SimplicialComplex:
    if not is_facet_function(g, f.values):
        raise PreconditionError(f"{f.values} is not facet defining")
    return SimplicialComplex(HJM(g, order).facet_simplices(f))


def hjm_triangulation(g: Graph, order: Optional[EdgeOrder] = None) -> SimplicialComplex:
    return HJM(g, order).full


# ---------------------------------------------------------------- visible part


@dataclass(frozen=True)
class VisibleTriangulation:
    """Maximal simplices of the triangulated visible facets, each with its height."""

    graph: Graph
    edge: tuple[int, int]
    order: EdgeOrder
    simplices: tuple[tuple[frozenset, int], ...]

    @cached_property
    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(s for s, _ in self.simplices)

    def heights(self) -> list[int]:
        return sorted({h for _, h in self.simplices}, reverse=True)


@lru_cache(maxsize=2048)
def visible_triangulation(g: Graph, ij: tuple[int, int], order: Optional[EdgeOrder] = None) -> VisibleTriangulation:
    i, j = ij
    if order is None:
        order = default_order(g, ij)
    hjm = HJM(g.delete_edge(i, j), order)
    simplices = []
    for f, ht in visible_facets(g, ij):
        simplices += [(s, ht) for s in hjm.facet_simplices(f)]
    simplices.sort(key=lambda p: (sorted_face(p[0]), p[1]))
    return VisibleTriangulation(g, (i, j), order, tuple(simplices))


def gamma_complex(g: Graph, ij: tuple[int, int], order: Optional[EdgeOrder] = None) -> SimplicialComplex:
    return visible_triangulation(g, ij, order).complex
