from __future__ import annotations

import json

import pytest
from hypothesis import given

from sepolytope.errors import PreconditionError, ResourceError
from sepolytope.geometry import z2
from sepolytope.graph import complete_graph, complete_multipartite, cycle_graph, path_graph
from sepolytope.lab import (
    SUITES,
    c_ij,
    check_conj_sum,
    check_corollary_Z0,
    check_graph,
    check_theorem_A,
    edge_gammas,
    find_shelling,
    layer_shellability,
    layered_sum,
    read_ledger,
    shellability_probe,
    sweep,
    z2_identity,
    z_poly,
)
from sepolytope.poly import IntPolynomial, gamma_decompose, is_palindromic
from sepolytope.triangulation import SimplicialComplex

from conftest import CHORDED_PENTAGON, EIGHT_VERTEX, connected_graphs, two_connected_graphs

P = IntPolynomial
TWO_T = P([0, 2])


# ---------------------------------------------------------------- deletion differences and Z_G


def test_c_ij_examples():
    assert c_ij(complete_graph(4), (1, 2)) == TWO_T * P([1, 1])
    assert c_ij(CHORDED_PENTAGON, (1, 2)) == TWO_T * P([1, 4, 1])
    assert c_ij(CHORDED_PENTAGON, (3, 4)) == TWO_T * (P([1, 1]) * P([1, 1]) + P([0, 2]))
    assert c_ij(CHORDED_PENTAGON, (1, 3)) == P([0, 2, 2, 2])


def test_c_ij_needs_two_connected():
    with pytest.raises(PreconditionError):
        c_ij(path_graph(4), (1, 2))


def test_edge_gammas_negative_chord():
    eg = edge_gammas(CHORDED_PENTAGON)
    gammas = {e: gd.gamma for e, (_, gd) in eg.items()}
    assert gammas[(1, 3)] == (0, 2, -2)
    assert all(gammas[e] == (0, 2, 4) for e in gammas if e != (1, 3))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_z_poly_complete(n):
    assert z_poly(complete_graph(n)) == P([0, n * (n - 1)])


def test_z_poly_examples():
    assert z_poly(cycle_graph(5)) == P([0, 10, 30])
    assert z_poly(CHORDED_PENTAGON) == P([0, 12, 18])
    assert z_poly(CHORDED_PENTAGON).nonnegative()


@given(two_connected_graphs(max_n=6))
def test_z_poly_low_coefficients(g):
    z = z_poly(g)
    assert z[0] == 0 and z[1] == 2 * len(g.edges)
    assert z.nonnegative()


# ---------------------------------------------------------------- layered sum


@pytest.mark.parametrize("n", [4, 5, 6])
def test_layered_sum_complete_is_one_level(n):
    ls = layered_sum(complete_graph(n), (1, 2))
    assert ls.distances == (1,)
    assert ls.rhs == TWO_T * ls.level_h[0] == c_ij(complete_graph(n), (1, 2))


def test_layered_sum_negative_gamma_edges():
    ls = layered_sum(CHORDED_PENTAGON, (3, 4))
    assert ls.distances == (2, 1)
    assert ls.summands == (P([1, 1]) * P([1, 1]), P([0, 2]))
    assert ls.facet_counts == (2, 2)
    ls = layered_sum(CHORDED_PENTAGON, (1, 2))
    assert ls.distances == (1,) and ls.facet_counts == (6,)
    assert ls.level_h == (P([1, 4, 1]),)


def test_layered_sum_eight_vertex_table():
    ls = layered_sum(EIGHT_VERTEX, (1, 2))
    assert ls.distances == (3, 2, 1)
    assert ls.level_h == (P([1, 2, 2, 1]), P([1, 7, 10, 6]), P([1, 11, 30, 26, 4]))
    assert ls.differences() == [P([1, 2, 2, 1]), P([0, 5, 8, 5]), P([0, 4, 20, 20, 4])]
    assert ls.rhs == TWO_T * P([1, 12, 38, 38, 12, 1])


def test_conj_sum_examples():
    v = check_conj_sum(complete_graph(5), (1, 2))
    assert v.ok and v.witness is None
    v = check_conj_sum(EIGHT_VERTEX, (1, 2))
    assert v.equal and v.palindromic and v.nonnegative
    # the first summand is not gamma-nonnegative even though the conditions hold
    first = layered_sum(EIGHT_VERTEX, (1, 2)).summands[0]
    assert not gamma_decompose(first, EIGHT_VERTEX.n - 3).nonnegative()


@given(two_connected_graphs(max_n=6))
def test_conj_sum_holds_at_small_n(g):
    for e in g.sorted_edges:
        v = check_conj_sum(g, e)
        assert v.ok, v.witness
        ls = layered_sum(g, e)
        assert all(is_palindromic(s, g.n - 3) for s in ls.summands)


# ---------------------------------------------------------------- z2 checks


def test_z2_identity_examples():
    assert z2_identity(complete_graph(5))
    assert z_poly(cycle_graph(5))[2] == 30 == 2 * z2(cycle_graph(5))
    assert z2_identity(cycle_graph(5))
    with pytest.raises(PreconditionError):
        z2_identity(complete_graph(4))


@given(two_connected_graphs(min_n=5, max_n=6))
def test_z2_identity_property(g):
    assert z2_identity(g)


def test_theorem_and_corollary_examples():
    k114 = complete_multipartite(1, 1, 4)
    assert check_theorem_A(k114) and z2(k114) == 0 and check_corollary_Z0(k114)
    c5 = cycle_graph(5)
    assert check_theorem_A(c5) and z2(c5) > 0 and check_corollary_Z0(c5)
    with pytest.raises(PreconditionError):
        check_corollary_Z0(complete_graph(2))


@given(connected_graphs(min_n=3, max_n=7))
def test_theorem_and_corollary_property(g):
    assert check_theorem_A(g) and check_corollary_Z0(g)


# ---------------------------------------------------------------- shelling


def test_shelling_trivial_cases():
    assert shellability_probe(SimplicialComplex([[1, 2, 3]])).status == "shellable"
    sq = SimplicialComplex([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]])
    res = shellability_probe(sq)
    assert res.status == "shellable" and len(res.order) == 4


def test_shelling_negative_and_budget():
    # two disjoint edges: not shellable as a 1-dimensional complex
    two = SimplicialComplex([["a", "b"], ["c", "d"]])
    assert shellability_probe(two).status == "not_shellable"
    sq = SimplicialComplex([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]])
    assert shellability_probe(sq, budget=1).status == "inconclusive"
    with pytest.raises(PreconditionError):
        find_shelling([[frozenset("ab"), frozenset("c")]])


def test_grouped_shelling_respects_order():
    a, b, c = frozenset("ab"), frozenset("bc"), frozenset("cd")
    assert find_shelling([[a, c], [b]]).status == "not_shellable"
    assert find_shelling([[a], [b, c]]).order == (a, b, c)


def test_layer_shellability_small():
    rep = layer_shellability(CHORDED_PENTAGON, (3, 4))
    assert rep.levels == ("shellable", "shellable")
    assert rep.layered == "shellable"


# ---------------------------------------------------------------- ledger records and sweeps


def test_check_graph_record_shape():
    rec = check_graph(CHORDED_PENTAGON, SUITES)
    assert rec["code"] == "DLs" and (rec["n"], rec["m"]) == (5, 6)
    assert rec["Z_G"] == [0, 12, 18]
    assert rec["gamma"]["1-3"] == [0, 2, -2]
    assert all(v is True for v in rec["verdicts"].values())
    assert rec["witnesses"] == []


def test_check_graph_not_two_connected():
    rec = check_graph(path_graph(4), ["zg", "theoremA", "corollaryZ0"])
    v = rec["verdicts"]
    assert v["zg_nonneg"] is None and v["theoremA"] is True and v["corollaryZ0"] is True


def _strip(recs):
    return [{k: v for k, v in r.items() if k != "wall_time"} for r in recs]


def test_sweep_small_all_checks(tmp_path):
    ledger = tmp_path / "l.jsonl"
    s = sweep(1, 5, SUITES, ledger_path=str(ledger))
    assert s.status == 0 and not s.failures
    assert s.graphs_checked == 1 + 1 + 2 + 6 + 21
    assert s.passed["theoremA"] == s.graphs_checked


def test_sweep_resume_is_idempotent(tmp_path):
    ledger = tmp_path / "l.jsonl"
    first = sweep(3, 5, ["zg"], ledger_path=str(ledger))
    before = read_ledger(str(ledger))
    again = sweep(3, 5, ["zg"], ledger_path=str(ledger))
    assert again.graphs_checked == 0 and again.graphs_skipped == first.graphs_checked
    assert read_ledger(str(ledger)) == before
    codes = [r["code"] for r in before]
    assert len(codes) == len(set(codes))


def test_sweep_resume_after_interrupt(tmp_path):
    ledger = tmp_path / "l.jsonl"
    full = sweep(3, 5, ["zg"])
    part = sweep(3, 5, ["zg"], ledger_path=str(ledger), time_budget=0.0)
    assert part.budget_exhausted and part.status == 3 and part.graphs_checked == 1
    rest = sweep(3, 5, ["zg"], ledger_path=str(ledger))
    assert rest.graphs_skipped == 1 and rest.graphs_checked == full.graphs_checked - 1
    codes = [r["code"] for r in read_ledger(str(ledger))]
    assert len(codes) == len(set(codes)) == full.graphs_checked


def test_sweep_new_checks_are_not_skipped(tmp_path):
    ledger = tmp_path / "l.jsonl"
    sweep(3, 4, ["zg"], ledger_path=str(ledger))
    more = sweep(3, 4, ["zg", "conjsum"], ledger_path=str(ledger))
    assert more.graphs_skipped == 0 and more.graphs_checked > 0


def test_sweep_ordering_is_jobs_independent(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    sweep(3, 5, ["zg", "conjsum"], jobs=1, ledger_path=str(a))
    sweep(3, 5, ["zg", "conjsum"], jobs=2, ledger_path=str(b))
    ra, rb = _strip(read_ledger(str(a))), _strip(read_ledger(str(b)))
    assert ra == rb
    assert [json.dumps(r, sort_keys=True) for r in ra] == [json.dumps(r, sort_keys=True) for r in rb]


def test_sweep_argument_errors():
    with pytest.raises(PreconditionError):
        sweep(3, 4, ["bogus"])
    with pytest.raises(PreconditionError):
        sweep(3, 4, [])
    with pytest.raises(ResourceError):
        sweep(8, 8, ["zg"])


def test_summary_outputs():
    s = sweep(3, 4, ["zg", "theoremA"])
    js = s.to_json()
    assert js["status"] == 0 and js["checks"] == ["theoremA", "zg"]
    assert "zg_nonneg" in s.table()


def test_failing_record_surfaces(monkeypatch):
    import sepolytope.lab as lab

    monkeypatch.setattr(lab, "check_theorem_A", lambda g: False)
    s = lab.sweep(3, 3, ["theoremA"])
    assert s.status == 1 and s.failures[0]["failed"] == ["theoremA"]
    assert "COUNTEREXAMPLE" in s.table()


@given(two_connected_graphs(min_n=5, max_n=6))
def test_gamma2_is_the_edge_excess(g):
    from sepolytope.geometry import edge_stats

    stats = edge_stats(g)
    for e, (_, gd) in edge_gammas(g).items():
        assert gd.gamma[2] == stats[e].Z
