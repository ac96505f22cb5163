from __future__ import annotations

import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sepolytope.ehrhart import hstar_pointcount
from sepolytope.errors import PreconditionError
from sepolytope.geometry import FacetFunction, enumerate_facets, oriented_edges, point, polytope_neighbors
from sepolytope.graph import Graph, complete_graph, cycle_graph, path_graph, shortest_path
from sepolytope.poly import IntPolynomial
from sepolytope.triangulation import (
    APEX,
    HJM,
    ORIGIN,
    EdgeOrder,
    SimplicialComplex,
    cone_complex,
    default_order,
    facet_triangulation,
    gamma_complex,
    h_polynomial,
    hjm_triangulation,
    is_face,
    label_str,
    link,
    minimal_nonfaces,
    parse_label,
    visible_triangulation,
)

from conftest import EIGHT_VERTEX, connected_graphs, two_connected_graphs


# ---------------------------------------------------------------- complexes


def test_square_boundary_h():
    sq = SimplicialComplex([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]])
    assert sq.f_vector == (1, 4, 4)
    assert h_polynomial(sq) == IntPolynomial([1, 2, 1])
    assert h_polynomial(cone_complex(sq, "x")) == h_polynomial(sq)


def test_single_simplex_and_cone_of_point():
    assert h_polynomial(SimplicialComplex([[1, 2, 3]])) == IntPolynomial([1])
    seg = cone_complex(SimplicialComplex([["v"]]), "x")
    assert seg.dim == 1 and h_polynomial(seg) == IntPolynomial([1])


def test_non_pure_rejected():
    with pytest.raises(PreconditionError):
        h_polynomial(SimplicialComplex([["a", "b"], ["c"]]))


def test_link_conventions():
    tri = SimplicialComplex([["a", "b"], ["b", "c"], ["a", "c"]])
    assert set(link(tri, ["a"]).facets) == {frozenset("b"), frozenset("c")}
    assert link(tri, []) is tri
    assert h_polynomial(link(tri, ["a", "b"])) == IntPolynomial([1])
    with pytest.raises(PreconditionError):
        link(tri, ["a", "b", "c"])


def test_cone_label_clash():
    with pytest.raises(PreconditionError):
        cone_complex(SimplicialComplex([["A", "b"]]), APEX)


def test_only_maximal_faces_kept():
    c = SimplicialComplex([["a", "b"], ["a"], ["b", "c"]])
    assert len(c.facets) == 2 and ["a"] in c and ["a", "c"] not in c


def test_json_roundtrip():
    c = HJM(cycle_graph(4)).full
    data = json.loads(json.dumps(c.to_json()))
    assert "O" in data["ground"] and "1>2" in data["ground"]
    assert SimplicialComplex.from_json(data).facets == c.facets
    assert parse_label(label_str((3, 1))) == (3, 1) and parse_label("A") == APEX


# ---------------------------------------------------------------- orders and non-faces


def test_default_orders():
    assert default_order(complete_graph(4)).edges == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
    assert default_order(cycle_graph(5), (1, 2)).edges[:4] == ((1, 5), (4, 5), (3, 4), (2, 3))
    assert default_order(complete_graph(5), (1, 2)).edges[:2] == ((1, 3), (2, 3))
    with pytest.raises(PreconditionError):
        default_order(path_graph(3), (1, 2))
    with pytest.raises(PreconditionError):
        EdgeOrder(((1, 2), (1, 2)))


def test_nonfaces_single_edge():
    assert minimal_nonfaces(Graph.from_edges(2, [(1, 2)])) == {frozenset({(1, 2), (2, 1)})}


def test_nonfaces_triangle():
    nf = minimal_nonfaces(complete_graph(3))
    opposite = {frozenset({(u, v), (v, u)}) for u, v in complete_graph(3).edges}
    directed = {frozenset(p) for seq in ((1, 2, 3), (1, 3, 2)) for p in itertools.combinations(list(zip(seq, seq[1:] + seq[:1])), 2)}
    assert nf == opposite | directed
    assert not is_face([(1, 2), (2, 3), (3, 1)], nf)
    assert is_face([(1, 2), (3, 2), ORIGIN], nf)


def test_nonfaces_square_skip_minimal_edge():
    nf = minimal_nonfaces(cycle_graph(4))
    cyclic = [s for s in nf if len({tuple(sorted(a)) for a in s}) == 2]
    for s in cyclic:
        assert all(tuple(sorted(a)) != (1, 2) for a in s)
    assert len(cyclic) == 2 * 3  # two orientations, three 2-subsets of the other three edges


def test_tree_faces():
    t = path_graph(5)
    nf = minimal_nonfaces(t)
    for flips in itertools.product((0, 1), repeat=4):
        tree = [(v + 1, v) if f else (v, v + 1) for v, f in zip(range(1, 5), flips)]
        assert is_face(tree, nf)


@given(connected_graphs(min_n=2, max_n=5), st.randoms(use_true_random=False), st.data())
def test_fast_face_oracle_matches_nonface_list(g, rnd, data):
    edges = list(g.sorted_edges)
    rnd.shuffle(edges)
    hjm = HJM(g, EdgeOrder(tuple(edges)))
    nf = hjm.minimal_nonfaces()
    arcs = oriented_edges(g)
    for _ in range(20):
        s = data.draw(st.sets(st.sampled_from(arcs), max_size=min(len(arcs), g.n + 1)))
        assert hjm.is_face(s) == is_face(s, nf)


# ---------------------------------------------------------------- triangulation geometry


def _unimodular(n: int, face) -> bool:
    pts = np.array([point(n, x) for x in face if not isinstance(x, str)])
    return round(abs(np.linalg.det(pts[:, :-1].astype(float)))) == 1


def test_facet_triangulation_examples():
    k3 = complete_graph(3)
    assert all(len(facet_triangulation(k3, f).facets) == 1 for f in enumerate_facets(k3))
    k4 = complete_graph(4)
    sizes = sorted(len(facet_triangulation(k4, f).facets) for f in enumerate_facets(k4))
    assert sizes == [1] * 8 + [2] * 6
    t = path_graph(4)
    assert all(len(facet_triangulation(t, f).facets) == 1 for f in enumerate_facets(t))
    with pytest.raises(PreconditionError):
        facet_triangulation(path_graph(4), FacetFunction((0, 1, 1, 0)))


@given(connected_graphs(min_n=2, max_n=5), st.randoms(use_true_random=False))
def test_triangulation_is_unimodular_and_volume_filling(g, rnd):
    edges = list(g.sorted_edges)
    rnd.shuffle(edges)
    full = hjm_triangulation(g, EdgeOrder(tuple(edges)))
    assert full.is_pure() and full.dim == g.n - 1
    assert all(ORIGIN in f for f in full.facets)
    assert all(_unimodular(g.n, f) for f in full.facets)
    assert len(full.facets) == hstar_pointcount(g)(1)
    assert h_polynomial(full) == hstar_pointcount(g)


@given(connected_graphs(min_n=2, max_n=6))
def test_simplices_are_distinct_spanning_trees(g):
    hjm = HJM(g)
    for f in enumerate_facets(g):
        simp = hjm.facet_simplices(f)
        assert len(set(simp)) == len(simp)
        for s in simp:
            assert len(s) == g.n - 1
            assert len({tuple(sorted(a)) for a in s}) == g.n - 1


# ---------------------------------------------------------------- visible part


@pytest.mark.parametrize("n", [4, 5, 6])
def test_complete_graph_gamma_is_join(n):
    gam = gamma_complex(complete_graph(n), (1, 2))
    # (n-4)-dimensional cross-polytope boundary joined with a segment
    cross = IntPolynomial.one_plus_t_pow(n - 3)
    assert h_polynomial(gam) == cross
    assert len(gam.ground) == 2 * (n - 2)


def test_cycle_gamma_vertices():
    assert len(gamma_complex(cycle_graph(5), (1, 2)).ground) == 8 == polytope_neighbors(cycle_graph(5), (1, 2))


def test_eight_vertex_gamma():
    gam = gamma_complex(EIGHT_VERTEX, (1, 2))
    assert h_polynomial(gam) == IntPolynomial([1, 11, 30, 26, 4])
    assert gam.dim == EIGHT_VERTEX.n - 2


@given(two_connected_graphs(max_n=6))
def test_gamma_vertices_are_the_neighbours(g):
    for ij in g.sorted_edges:
        gam = gamma_complex(g, ij)
        assert gam.is_pure() and gam.dim == g.n - 2
        assert len(gam.ground) == polytope_neighbors(g, ij)


@given(two_connected_graphs(max_n=6))
def test_shortest_path_orientations_are_faces(g):
    for i, j in g.sorted_edges:
        h = g.delete_edge(i, j)
        hjm = HJM(h, default_order(g, (i, j)))
        path = shortest_path(h, i, j)
        steps = list(zip(path, path[1:]))
        for flips in itertools.product((0, 1), repeat=len(steps)):
            assert hjm.is_face([(b, a) if f else (a, b) for (a, b), f in zip(steps, flips)])


def test_visible_triangulation_heights():
    vt = visible_triangulation(EIGHT_VERTEX, (1, 2))
    assert vt.heights() == [4, 3, 2]
    assert vt.complex.is_pure()
