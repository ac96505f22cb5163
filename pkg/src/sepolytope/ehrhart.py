"""h*-polynomials of symmetric edge polytopes and the edge-deletion difference."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import PreconditionError, ResourceError
from .geometry import FacetFunction, LatticePoint, enumerate_facets, point, polytope_neighbors
from .graph import Graph, blocks, is_connected, is_two_connected, norm_edge, shortest_path
from .poly import IntPolynomial
from .triangulation import (
    APEX,
    HJM,
    VisibleTriangulation,
    cone_complex,
    h_polynomial,
    link,
    visible_triangulation,
)

# ---------------------------------------------------------------- two routes to h*


@lru_cache(maxsize=8192)
def hstar_triangulation(g: Graph) -> IntPolynomial:
    """h-polynomial of the full HJM triangulation (lexicographic edge order)."""
    if not is_connected(g):
        raise PreconditionError("h* requires a connected graph")
    return h_polynomial(HJM(g).full)


def ehrhart_counts(g: Graph, kmax: int, limits: Limits = DEFAULT_LIMITS) -> list[int]:
    """|kP_G ∩ Z^n| for k = 0..kmax by scanning the box [-k, k]^n ∩ {sum x = 0}."""
    if not is_connected(g):
        raise PreconditionError("point counting requires a connected graph")
    if g.n > limits.max_pointcount_n:
        raise ResourceError(f"n={g.n} exceeds point-count cap {limits.max_pointcount_n}")
    n = g.n
    F = np.array([f.values for f in enumerate_facets(g)], dtype=np.int64).reshape(-1, n)
    counts = [1]
    for k in range(1, kmax + 1):
        if n == 1:
            counts.append(1)
            continue
        axis = np.arange(-k, k + 1, dtype=np.int64)
        grids = np.meshgrid(*([axis] * (n - 1)), indexing="ij")
        free = np.stack([gr.ravel() for gr in grids], axis=1)
        last = -free.sum(axis=1)
        keep = np.abs(last) <= k
        X = np.concatenate([free[keep], last[keep, None]], axis=1)
        inside = np.ones(len(X), dtype=bool)
        for row in F:
            inside &= X @ row <= k
        counts.append(int(inside.sum()))
    return counts


def hstar_from_counts(counts: Sequence[int], d: int) -> IntPolynomial:
    """h*_k = sum_{i<=k} (-1)^i C(d+1, i) E(k-i), for k = 0..d."""
    return IntPolynomial(
        sum((-1) ** i * comb(d + 1, i) * counts[k - i] for i in range(k + 1)) for k in range(d + 1)
    )


def hstar_pointcount(g: Graph, limits: Limits = DEFAULT_LIMITS) -> IntPolynomial:
    d = g.n - 1
    return hstar_from_counts(ehrhart_counts(g, d, limits), d)


def hstar_block_product(g: Graph) -> IntPolynomial:
    if not is_connected(g):
        raise PreconditionError("block product requires a connected graph")
    acc = IntPolynomial([1])
    for block in blocks(g):
        verts = {v for e in block for v in e}
        acc = acc * hstar_triangulation(g.induced(verts))
    return acc


# ---------------------------------------------------------------- box polynomials


@dataclass(frozen=True)
class PathParams:
    a: int
    b: int

    @property
    def l(self) -> int:
        return self.a + self.b

    @property
    def h(self) -> int:
        return self.a - self.b


def path_params(face: Iterable, ij: tuple[int, int], f: Optional[FacetFunction] = None) -> PathParams:
    """Count path edges against / along the cycle traversed as i -> j, then j back to i.

    ``face`` holds oriented edges forming a simple i-j path (an apex label is
    ignored).  With a facet function given, h = f(i) - f(j) is checked.
    """
    i, j = ij
    arcs = [x for x in face if not isinstance(x, str)]
    nb: dict[int, list[tuple[int, int]]] = {}
    for u, v in arcs:
        nb.setdefault(u, []).append((u, v))
        nb.setdefault(v, []).append((u, v))
    if any(len(x) > 2 for x in nb.values()) or len(nb.get(i, ())) != 1 or len(nb.get(j, ())) != 1:
        raise PreconditionError("face together with the deleted edge does not span a single cycle")
    a = b = 0
    x, used = j, set()
    while x != i:
        step = [arc for arc in nb[x] if arc not in used]
        if len(step) != 1:
            raise PreconditionError("face together with the deleted edge does not span a single cycle")
        arc = step[0]
        used.add(arc)
        y = arc[1] if arc[0] == x else arc[0]
        if arc == (x, y):
            b += 1
        else:
            a += 1
        x = y
    if len(used) != len(arcs):
        raise PreconditionError("face has edges off the i-j path")
    p = PathParams(a, b)
    if f is not None and f.height(i, j) != p.h:
        raise PreconditionError(f"height mismatch: f(i)-f(j)={f.height(i, j)} but a-b={p.h}")
    return p


def box_closed_form(p: PathParams, is_cycle: bool) -> IntPolynomial:
    """t^(b+2) + ... + t^(a-1) for a cycle with a - b >= 3, else 0."""
    if not is_cycle or p.a - p.b < 3:
        return IntPolynomial()
    return IntPolynomial([0] * (p.b + 2) + [1] * (p.a - p.b - 2))


def _solver(cols: list[list[int]], first_row: int = 0) -> tuple[list[int], list[list[int]], int]:
    """Integer left inverse of the column vectors ``cols`` on a basis of rows.

    Returns ``(chosen, adj, D)`` with ``chosen`` the indices of m independent
    rows (``first_row`` is tried first) and ``adj / D`` the inverse of the
    square submatrix on those rows, ``adj`` integral and ``D > 0``.
    """
    m = len(cols)
    N = len(cols[0])
    rows = [[Fraction(cols[c][r]) for c in range(m)] for r in range(N)]
    chosen: list[int] = []
    basis: list[tuple[list[Fraction], int]] = []
    for r in [first_row] + [r for r in range(N) if r != first_row]:
        vec = rows[r][:]
        for bvec, piv in basis:
            if vec[piv]:
                factor = vec[piv] / bvec[piv]
                vec = [x - factor * y for x, y in zip(vec, bvec)]
        piv = next((k for k, x in enumerate(vec) if x), None)
        if piv is not None:
            basis.append((vec, piv))
            chosen.append(r)
        if len(chosen) == m:
            break
    if len(chosen) < m:
        raise PreconditionError("simplex vertices are affinely dependent")
    A = [rows[r] + [Fraction(int(k == t)) for k in range(m)] for t, r in enumerate(chosen)]
    for c in range(m):
        piv = next(r for r in range(c, m) if A[r][c])
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(m):
            if r != c and A[r][c]:
                fac = A[r][c]
                A[r] = [x - fac * y for x, y in zip(A[r], A[c])]
    inverse = [row[m:] for row in A]
    D = 1
    for row in inverse:
        for x in row:
            D = D * x.denominator // gcd(D, x.denominator)
    adj = [[int(x * D) for x in row] for row in inverse]
    return chosen, adj, D


def box_bruteforce(vertices: Sequence[LatticePoint]) -> IntPolynomial:
    """Lattice points of the open fundamental parallelepiped, graded by last coordinate.

    Candidates range over the integer bounding box of the parallelepiped on a
    basis of coordinates (the height among them); barycentric coordinates are
    solved exactly and tested for lying strictly in (0, 1), then the remaining
    coordinates are tested for integrality.
    """
    if not vertices:
        return IntPolynomial([1])
    lifted = [list(v) + [1] for v in vertices]
    m = len(lifted)
    N = len(lifted[0])
    chosen, adj, D = _solver(lifted, first_row=N - 1)
    free = chosen[1:]  # chosen[0] is the height row
    ranges = [
        range(sum(min(0, v[c]) for v in lifted), sum(max(0, v[c]) for v in lifted) + 1) for c in free
    ]
    others = [c for c in range(N) if c not in chosen]
    counts = [0] * (m + 1)
    for height in range(1, m):
        for cand in product(*ranges):
            rhs = (height,) + cand
            lam = [sum(a * x for a, x in zip(adj[k], rhs)) for k in range(m)]  # D * lambda
            if not all(0 < x < D for x in lam):
                continue
            if all(sum(lam[k] * lifted[k][c] for k in range(m)) % D == 0 for c in others):
                counts[height] += 1
    return IntPolynomial(counts)


# ---------------------------------------------------------------- edge deletion


def is_ij_path(face: frozenset, i: int, j: int) -> bool:
    arcs = [x for x in face if not isinstance(x, str)]
    if not arcs:
        return False
    deg: dict[int, int] = {}
    for u, v in arcs:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if deg.get(i) != 1 or deg.get(j) != 1 or any(d > 2 for d in deg.values()):
        return False
    if len(deg) != len(arcs) + 1:
        return False
    # connected: walk from i
    nb: dict[int, list[int]] = {}
    for u, v in arcs:
        nb.setdefault(u, []).append(v)
        nb.setdefault(v, []).append(u)
    seen, stack = {i}, [i]
    while stack:
        x = stack.pop()
        for y in nb[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(deg)


@dataclass(frozen=True)
class CycleFace:
    face: frozenset  # includes the apex
    params: PathParams
    link_h: IntPolynomial


def cycle_faces(vt: VisibleTriangulation) -> list[CycleFace]:
    """Faces F of the cone over the visible complex with G(F) a cycle through ij."""
    i, j = vt.edge
    delta = cone_complex(vt.complex, APEX)
    out = []
    for face in sorted(vt.complex.faces, key=lambda f: sorted(f)):
        if not is_ij_path(face, i, j):
            continue
        F = face | {APEX}
        out.append(CycleFace(F, path_params(face, (i, j)), h_polynomial(link(delta, F))))
    return out


def _require_two_connected(g: Graph) -> None:
    if not is_two_connected(g):
        raise PreconditionError("operation requires a 2-connected graph")


def diff_hstar(g: Graph, ij: tuple[int, int]) -> IntPolynomial:
    """2t h_Gamma(t) + 2 sum over cycle faces of h_link(t) * box(t)."""
    _require_two_connected(g)
    vt = visible_triangulation(g, tuple(ij))
    total = h_polynomial(vt.complex).shift(1) * 2
    for cf in cycle_faces(vt):
        box = box_closed_form(cf.params, True)
        if not box.is_zero():
            total = total + cf.link_h * box * 2
    return total


def face_vertices(g: Graph, face: Iterable, ij: tuple[int, int]) -> list[LatticePoint]:
    """Lattice points of a face of the cone (apex = e_i - e_j)."""
    pts = []
    for x in sorted(face, key=lambda y: (isinstance(y, tuple), y)):
        pts.append(point(g.n, ij) if x == APEX else point(g.n, x))
    return pts


def a2_gamma2_formulas(g: Graph, ij: tuple[int, int]) -> tuple[int, int]:
    """Closed forms for the t^2 coefficient and gamma_2 of h*_G - h*_{G minus ij}."""
    _require_two_connected(g)
    n = g.n
    if n < 5:
        raise PreconditionError("gamma_2 needs at least five vertices")
    i, j = ij
    f0 = polytope_neighbors(g, ij)
    length = len(shortest_path(g.delete_edge(i, j), i, j)) - 1
    if length == 2:
        return 2 * (f0 - n + 1), 2 * (f0 - 2 * n + 4)
    return 2 * (f0 - n + 2), 2 * (f0 - 2 * n + 5)
