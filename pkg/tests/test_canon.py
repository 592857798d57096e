from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transmols.canon import (
    ColoredGraph,
    canonical_certificate,
    canonical_labeling,
    graph_automorphisms,
    is_automorphism,
    mols_graph,
)
from transmols.classify import isotopy_certificate, main_class_certificate
from transmols.enumeration import all_reduced_squares
from transmols.mols import LatinSquare, cayley_square, field_mols, mols_to_array, square_to_array
from transmols.perms import direct_product, standard_group


@st.composite
def colored_graphs(draw, max_vertices=8, colors=2):
    n = draw(st.integers(1, max_vertices))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    cols = draw(st.lists(st.integers(0, colors - 1), min_size=n, max_size=n))
    return ColoredGraph.from_edges(n, [p for p, b in zip(pairs, chosen) if b], cols)


def relabel(graph: ColoredGraph, perm) -> ColoredGraph:
    edges = [(perm[u], perm[v]) for u, v in graph.edges]
    colors = [0] * graph.vertex_count
    for v, c in enumerate(graph.colors):
        colors[perm[v]] = c
    return ColoredGraph.from_edges(graph.vertex_count, edges, colors)


def brute_automorphism_count(graph: ColoredGraph) -> int:
    return sum(is_automorphism(graph, p) for p in permutations(range(graph.vertex_count)))


def brute_isomorphic(g: ColoredGraph, h: ColoredGraph) -> bool:
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return False
    target = (h.edges, h.colors)
    return any((relabel(g, p).edges, relabel(g, p).colors) == target
               for p in permutations(range(g.vertex_count)))


def isotope(square, rows, cols, syms):
    n = len(square)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[rows[i]][cols[j]] = syms[square[i][j]]
    return LatinSquare(tuple(tuple(r) for r in out))


def conjugate(square, order):
    """Permute the roles of row, column and symbol."""
    n = len(square)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            t = (i, j, square[i][j])
            a, b, c = (t[k] for k in order)
            out[a][b] = c
    return LatinSquare(tuple(tuple(r) for r in out))


def cycle_graph(n):
    return ColoredGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return ColoredGraph.from_edges(10, outer + inner + spokes)


@pytest.mark.parametrize("graph, order", [
    (cycle_graph(5), 10),
    (cycle_graph(6), 12),
    (ColoredGraph.from_edges(4, list(combinations(range(4), 2))), 24),
    (ColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), 2),
    (ColoredGraph.from_edges(6, []), 720),
    (petersen(), 120),
    (ColoredGraph.from_edges(4, [(0, 1), (2, 3)], [0, 0, 1, 1]), 4),
])
def test_automorphism_group_orders(graph, order):
    aut = graph_automorphisms(graph)
    assert aut.order == order
    assert all(is_automorphism(graph, g) for g in aut.generators)


@given(colored_graphs(max_vertices=6))
def test_automorphism_order_matches_brute_force(graph):
    assert graph_automorphisms(graph).order == brute_automorphism_count(graph)


@given(colored_graphs(), st.randoms(use_true_random=False))
def test_certificate_is_relabeling_invariant(graph, rng):
    perm = list(range(graph.vertex_count))
    rng.shuffle(perm)
    assert canonical_certificate(relabel(graph, perm)) == canonical_certificate(graph)


@given(colored_graphs(max_vertices=5), colored_graphs(max_vertices=5))
def test_certificate_equality_is_isomorphism(g, h):
    assert (canonical_certificate(g) == canonical_certificate(h)) == brute_isomorphic(g, h)


@given(colored_graphs())
def test_labeling_generators_are_automorphisms(graph):
    lab, gens = canonical_labeling(graph)
    assert sorted(lab) == list(range(graph.vertex_count))
    assert all(is_automorphism(graph, g) for g in gens)


def test_mols_graph_sizes():
    g = mols_graph(square_to_array([[0, 1], [1, 0]]), "paratopy")
    assert g.vertex_count == 13
    assert g.edge_count == 3 * 2 + 4 * 3
    g = mols_graph(mols_to_array(field_mols(4)), "isotopy")
    assert g.vertex_count == 5 + 5 * 4 + 16
    assert len(set(g.colors)) == 5 + 2
    with pytest.raises(ValueError):
        mols_graph(square_to_array([[0]]), "other")


SQUARES_5 = list(all_reduced_squares(5))


@given(st.sampled_from(SQUARES_5), st.permutations(range(5)), st.permutations(range(5)),
       st.permutations(range(5)), st.permutations(range(3)))
def test_main_class_certificate_invariance(square, rows, cols, syms, roles):
    moved = conjugate(isotope(square.cells, rows, cols, syms).cells, roles)
    assert main_class_certificate(moved) == main_class_certificate(square)


@given(st.sampled_from(SQUARES_5), st.permutations(range(5)), st.permutations(range(5)),
       st.permutations(range(5)))
def test_isotopy_certificate_invariance(square, rows, cols, syms):
    moved = isotope(square.cells, rows, cols, syms)
    assert isotopy_certificate(square_to_array(moved)) == isotopy_certificate(square_to_array(square))


def test_transpose_keeps_main_class_but_can_change_isotopy_class():
    # every order-5 square is paratopic to its transpose
    assert all(main_class_certificate(s) == main_class_certificate(s.transpose())
               for s in SQUARES_5[:10])


def test_order4_group_tables_are_different_main_classes():
    Z4 = standard_group("cyclic", 4)
    Z2 = standard_group("cyclic", 2)
    V = direct_product(Z2, Z2)
    assert main_class_certificate(cayley_square(Z4)) != main_class_certificate(cayley_square(V))


def test_empty_graph_labeling():
    assert canonical_labeling(ColoredGraph(0, (), ())) == ([], [])
