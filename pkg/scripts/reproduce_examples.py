#!/usr/bin/env python3
"""Print the worked examples: complete graphs, the chorded pentagon, the 8-vertex table."""

from __future__ import annotations

from collections import Counter

from sepolytope.geometry import edge_stats, visible_facets, z2
from sepolytope.graph import Graph, complete_graph, cycle_graph
from sepolytope.lab import c_ij, edge_gammas, layered_sum, z_poly
from sepolytope.ehrhart import hstar_triangulation

PENTAGON = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3)])
EIGHT = Graph.from_edges(8, [(1, 2), (1, 6), (1, 7), (2, 3), (3, 4), (3, 8), (4, 5), (5, 6), (6, 7), (7, 8)])


def complete_graphs() -> None:
    print("complete graphs")
    for n in range(3, 8):
        g = complete_graph(n)
        print(f"  K{n}: h* {hstar_triangulation(g)}   c^12 {c_ij(g, (1, 2))}   Z {z_poly(g)}   z2 {z2(g)}")


def pentagon() -> None:
    print("5-cycle with chord 13")
    stats = edge_stats(PENTAGON)
    for e, (c, gd) in edge_gammas(PENTAGON).items():
        print(f"  edge {e}: c = {c}   gamma {gd.gamma}   Z_e = {stats[e].Z}")
    print(f"  Z_G = {z_poly(PENTAGON)}   z2 = {z2(PENTAGON)}")
    for e in [(1, 2), (3, 4)]:
        ls = layered_sum(PENTAGON, e)
        parts = ", ".join(f"d={d}: {k} simplices" for d, k in zip(ls.distances, ls.facet_counts))
        print(f"  layers for {e}: {parts}; summands {[str(s) for s in ls.summands]}")


def eight_vertex() -> None:
    print("8-vertex example, edge 12")
    vis = visible_facets(EIGHT, (1, 2))
    print(f"  visible facets {len(vis)}, by distance {dict(sorted(Counter(h - 1 for _, h in vis).items(), reverse=True))}")
    ls = layered_sum(EIGHT, (1, 2))
    for d, h, diff, s in zip(ls.distances, ls.level_h, ls.differences(), ls.summands):
        print(f"  distance >= {d}: h = {h}   new part {diff}   summand {s}")
    print(f"  2t * sum = {ls.rhs}")
    print(f"  c^12     = {c_ij(EIGHT, (1, 2))}")


if __name__ == "__main__":
    complete_graphs()
    print(f"5-cycle: h* {hstar_triangulation(cycle_graph(5))}   Z {z_poly(cycle_graph(5))}")
    pentagon()
    eight_vertex()
