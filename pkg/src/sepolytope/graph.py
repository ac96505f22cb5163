"""Simple graphs on vertices 1..n: parsing, cycles, pages, canonical enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .config import DEFAULT_LIMITS, Limits
from .errors import GraphValidationError, NoPathError, ParseError, PreconditionError, ResourceError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``edges`` holds pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphValidationError(f"vertex count must be positive, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise GraphValidationError(f"loop at vertex {u}")
            if not u < v:
                raise GraphValidationError(f"edge {(u, v)} not normalized")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphValidationError(f"edge {(u, v)} outside 1..{self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise GraphValidationError(f"loop at vertex {u}")
            e = norm_edge(u, v)
            if e in seen:
                raise GraphValidationError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nb: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return {v: frozenset(s) for v, s in nb.items()}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def delete_edge(self, u: int, v: int) -> "Graph":
        e = norm_edge(u, v)
        if e not in self.edges:
            raise PreconditionError(f"edge {e} not in graph")
        return Graph(self.n, self.edges - {e})

    def relabel(self, perm: dict[int, int]) -> "Graph":
        """Image of the graph under the vertex bijection ``perm``."""
        return Graph(self.n, frozenset(norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph relabelled to 1..k in increasing vertex order."""
        vs = sorted(set(vertices))
        pos = {v: i + 1 for i, v in enumerate(vs)}
        return Graph(
            len(vs),
            frozenset((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos),
        )

    def __str__(self) -> str:
        body = " ".join(f"{u}{v}" if self.n < 10 else f"{u}-{v}" for u, v in self.sorted_edges)
        return f"Graph(n={self.n}, E={{{body}}})"


# ---------------------------------------------------------------- parsing


def parse_edgelist(text: str) -> Graph:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty edgelist: first line must hold the vertex count")
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"line {lineno}: expected vertex count, got {head!r}") from None
    if n < 1:
        raise GraphValidationError(f"line {lineno}: vertex count must be positive")
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, ln in lines[1:]:
        parts = ln.replace(",", " ").split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex in {ln!r}") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphValidationError(f"line {lineno}: vertex out of range 1..{n}")
        if u == v:
            raise GraphValidationError(f"line {lineno}: loop at vertex {u}")
        e = norm_edge(u, v)
        if e in seen:
            raise GraphValidationError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(e)
        edges.append(e)
    return Graph(n, frozenset(edges))


def _g6_bits(g: Graph) -> list[int]:
    return [1 if g.has_edge(i, j) else 0 for j in range(2, g.n + 1) for i in range(1, j)]


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError("graph too large for graph6")


def to_graph6(g: Graph) -> str:
    bits = _g6_bits(g)
    bits += [0] * (-len(bits) % 6)
    out = [_g6_size(g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise ParseError("empty graph6 string")
    data = []
    for pos, ch in enumerate(s):
        o = ord(ch)
        if not 63 <= o <= 126:
            raise ParseError(f"byte {pos}: invalid graph6 character {ch!r}")
        data.append(o - 63)
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise ParseError("byte 1: unsupported or truncated size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
        offset = 4
    else:
        n = data[0]
        body = data[1:]
        offset = 1
    if n < 1:
        raise GraphValidationError("graph6 encodes an empty vertex set")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) != need:
        raise ParseError(f"byte {offset + min(len(body), need)}: expected {need} data bytes, got {len(body)}")
    bits = [(byte >> (5 - k)) & 1 for byte in body for k in range(6)]
    edges = []
    idx = 0
    for j in range(2, n + 1):
        for i in range(1, j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(n, frozenset(edges))


def parse_graph(text: str, fmt: str = "edgelist") -> Graph:
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise ValueError(f"unknown format {fmt!r}")


def to_edgelist(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.sorted_edges]) + "\n"


# ---------------------------------------------------------------- connectivity


def _reachable(g: Graph, start: int, removed: Optional[int] = None) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w != removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_connected(g: Graph) -> bool:
    return len(_reachable(g, 1)) == g.n


def is_two_connected(g: Graph) -> bool:
    """Connected, at least three vertices, and no cut vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    for v in g.vertices:
        start = 1 if v != 1 else 2
        if len(_reachable(g, start, removed=v)) != g.n - 1:
            return False
    return True


def blocks(g: Graph) -> list[frozenset[Edge]]:
    """Edge sets of the 2-connected components (bridges count as blocks).

    Iterative Hopcroft-Tarjan; output sorted by smallest edge.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: list[frozenset[Edge]] = []
    estack: list[Edge] = []
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, 0, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append(norm_edge(v, w))
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    low[v] = min(low[v], disc[w])
                    estack.append(norm_edge(v, w))
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = set()
                    target = norm_edge(u, v)
                    while True:
                        e = estack.pop()
                        comp.add(e)
                        if e == target:
                            break
                    out.append(frozenset(comp))
    return sorted(out, key=min)


def cyclomatic(g: Graph) -> int:
    if not is_connected(g):
        raise PreconditionError("cyclomatic number requires a connected graph")
    return len(g.edges) - g.n + 1


# ---------------------------------------------------------------- cycles and paths


def enumerate_cycles(
    g: Graph, max_len: Optional[int] = None, limits: Limits = DEFAULT_LIMITS
) -> list[tuple[int, ...]]:
    """All simple cycles of length >= 3 as canonical vertex tuples.

    A cycle is stored starting at its least vertex, with the smaller of the
    two neighbours second.  Sorted by (length, sequence).
    """
    cap = g.n if max_len is None else min(max_len, g.n)
    out: list[tuple[int, ...]] = []
    adj = g.adj
    for s in g.vertices:
        path = [s]
        on_path = {s}
        # explicit DFS stack of neighbour iterators
        stack = [iter(sorted(w for w in adj[s] if w > s))]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            if len(path) >= 3 and s in adj[w] and path[1] < w:
                out.append(tuple(path))
                if len(out) > limits.max_cycles:
                    raise ResourceError(f"more than {limits.max_cycles} cycles (raise SEP_MAX_CYCLES)")
            if len(path) < cap:
                stack.append(iter(sorted(x for x in adj[w] if x > s)))
            else:
                path.pop()
                on_path.discard(w)
    out.sort(key=lambda c: (len(c), c))
    return out


def cycle_edges(cycle: tuple[int, ...]) -> list[Edge]:
    k = len(cycle)
    return [norm_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def triangle_edge_set(g: Graph) -> frozenset[Edge]:
    return frozenset(e for e in g.edges if g.adj[e[0]] & g.adj[e[1]])


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    q = deque([source])
    while q:
        v = q.popleft()
        for w in g.adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def shortest_path(g: Graph, i: int, j: int) -> tuple[int, ...]:
    """Lexicographically least among the minimum-length i-j paths."""
    dist = bfs_distances(g, j)
    if i not in dist:
        raise NoPathError(f"no path between {i} and {j}")
    path = [i]
    v = i
    while v != j:
        v = min(w for w in g.adj[v] if dist.get(w) == dist[v] - 1)
        path.append(v)
    return tuple(path)


# ---------------------------------------------------------------- pages


@dataclass(frozen=True)
class PagePartition:
    edge: Edge
    pages: tuple[frozenset[Edge], ...]
    classes: tuple[tuple[int, ...], ...]  # indices into ``pages``

    def related(self, a: int, b: int) -> bool:
        """The one-step relation: two pages sharing exactly two edges."""
        return len(self.pages[a] & self.pages[b]) == 2


def pages(g: Graph, l: tuple[int, int]) -> PagePartition:
    """Induced 4-cycles through ``l`` grouped into classes of the share-two-edges closure."""
    u, v = norm_edge(*l)
    if (u, v) not in g.edges:
        raise PreconditionError(f"edge {(u, v)} not in graph")
    adj = g.adj
    found: list[frozenset[Edge]] = []
    for x in sorted(adj[v] - {u}):
        if x in adj[u]:
            continue
        for y in sorted(adj[u] - {v}):
            if y == x or y in adj[v] or x not in adj[y]:
                continue
            found.append(frozenset({(u, v), norm_edge(v, x), norm_edge(x, y), norm_edge(y, u)}))
    found.sort(key=sorted)
    parent = list(range(len(found)))

    def root(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in combinations(range(len(found)), 2):
        if len(found[a] & found[b]) == 2:
            parent[root(a)] = root(b)
    groups: dict[int, list[int]] = {}
    for a in range(len(found)):
        groups.setdefault(root(a), []).append(a)
    classes = tuple(sorted(tuple(m) for m in groups.values()))
    return PagePartition((u, v), tuple(found), classes)


# ---------------------------------------------------------------- canonical form


def _refine(adj: list[frozenset[int]], cells: list[list[int]]) -> list[list[int]]:
    """Colour refinement of an ordered partition; the split order is label-free."""
    while True:
        where = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                where[v] = ci
        new: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                counts = [0] * len(cells)
                for w in adj[v]:
                    counts[where[w]] += 1
                sig.setdefault(tuple(counts), []).append(v)
            for key in sorted(sig):
                new.append(sig[key])
        if len(new) == len(cells):
            return new
        cells = new


def _twin_reps(adj: list[frozenset[int]], cell: list[int]) -> list[int]:
    reps: list[int] = []
    for v in cell:
        if not any(adj[v] - {r} == adj[r] - {v} for r in reps):
            reps.append(v)
    return reps


def canonical_labeling(g: Graph) -> list[int]:
    """Vertex order (old labels) whose relabelled adjacency bits are lexicographically largest.

    Individualisation/refinement search; at each node only one vertex per
    twin class of the target cell is tried, since swapping twins is an
    automorphism fixing everything chosen so far.
    """
    n = g.n
    adj = [frozenset()] + [g.adj[v] for v in g.vertices]
    start = _refine(adj, [list(g.vertices)])
    best_bits: Optional[tuple[int, ...]] = None
    best_order: list[int] = []

    def leaf_bits(order: list[int]) -> tuple[int, ...]:
        return tuple(1 if order[i] in adj[order[j]] else 0 for j in range(1, n) for i in range(j))

    stack = [start]
    while stack:
        cells = stack.pop()
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            bits = leaf_bits(order)
            if best_bits is None or bits > best_bits:
                best_bits, best_order = bits, order
            continue
        ti = cells.index(target)
        for v in _twin_reps(adj, target):
            rest = [w for w in target if w != v]
            stack.append(_refine(adj, cells[:ti] + [[v], rest] + cells[ti + 1 :]))
    return best_order


def canonical_form(g: Graph) -> Graph:
    order = canonical_labeling(g)
    return g.relabel({old: new + 1 for new, old in enumerate(order)})


def canonical_code(g: Graph) -> str:
    """graph6 string of the canonical relabelling; equal exactly on isomorphic graphs."""
    return to_graph6(canonical_form(g))


@lru_cache(maxsize=None)
def _connected_codes(n: int) -> tuple[str, ...]:
    if n == 1:
        return (canonical_code(Graph(1)),)
    codes: set[str] = set()
    # every connected graph has a non-cut vertex; delete it to land in the level below
    for code in _connected_codes(n - 1):
        base = parse_graph6(code)
        for r in range(1, n):
            for nbrs in combinations(range(1, n), r):
                g = Graph(n, base.edges | frozenset((w, n) for w in nbrs))
                codes.add(canonical_code(g))
    return tuple(sorted(codes))


def enumerate_connected_graphs(
    n: int, two_connected_only: bool = False, limits: Limits = DEFAULT_LIMITS
) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, in canonical-code order."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if n > limits.max_enumerate_n:
        raise ResourceError(f"n={n} exceeds enumeration cap {limits.max_enumerate_n}")
    for code in _connected_codes(n):
        g = parse_graph6(code)
        if two_connected_only and not is_two_connected(g):
            continue
        yield g


# ---------------------------------------------------------------- named families


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(1, n + 1), 2)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def complete_multipartite(*parts: int) -> Graph:
    labels = []
    for p, size in enumerate(parts):
        labels += [p] * size
    n = len(labels)
    return Graph(
        n, frozenset((u + 1, v + 1) for u, v in combinations(range(n), 2) if labels[u] != labels[v])
    )
