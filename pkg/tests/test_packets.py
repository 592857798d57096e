from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transmols.catalog import load_group
from transmols.errors import (
    ArityMismatch,
    IndexViolation,
    IntersectionViolation,
    SizeMismatch,
    SizeTooSmall,
    SizeViolation,
)
from transmols.known_packets import KNOWN, known_packet
from transmols.packets import (
    cayley_packet,
    cliques_of_size,
    field_packet,
    find_packets,
    intersection_graph,
    is_disjoint,
    max_clique_size,
    maximal_cliques,
    maximum_cliques,
    product_packets,
    reduce_packet,
    subgroup_hash,
    trivial_packet,
    validate_packet,
)
from transmols.perms import direct_product, normal_core, standard_group, subgroups_of_order


def graphs(max_vertices=9):
    def build(data):
        n, bits = data
        nb = [0] * n
        pairs = list(combinations(range(n), 2))
        for (i, j), b in zip(pairs, bits):
            if b:
                nb[i] |= 1 << j
                nb[j] |= 1 << i
        return nb

    return st.integers(0, max_vertices).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.booleans(), min_size=n * (n - 1) // 2,
                                                 max_size=n * (n - 1) // 2))).map(build)


def brute_cliques(nb, size):
    return [c for c in combinations(range(len(nb)), size)
            if all(nb[a] >> b & 1 for a, b in combinations(c, 2))]


@given(graphs(), st.integers(1, 5))
def test_cliques_of_size_matches_brute_force(nb, size):
    assert list(cliques_of_size(nb, size)) == brute_cliques(nb, size)


@given(graphs())
def test_maximal_cliques_match_brute_force(nb):
    everything = [set(c) for k in range(1, len(nb) + 1) for c in brute_cliques(nb, k)]
    maximal = sorted(tuple(sorted(c)) for c in everything if not any(c < d for d in everything))
    assert maximal_cliques(nb) == (maximal if nb else [()])
    if nb:
        best = max(len(c) for c in maximal)
        assert maximum_cliques(nb) == [c for c in maximal if len(c) == best]


def test_klein_group_packet():
    G = direct_product(standard_group("cyclic", 2), standard_group("cyclic", 2))
    graph = intersection_graph(G, G.trivial_subgroup(), 2)
    assert len(graph.vertices) == 3 and len(graph.edges) == 3
    (packet,) = find_packets(graph)
    assert packet.n == 2 and packet.k == 1 and packet.q == 1
    assert is_disjoint(packet)


def test_cyclic4_graph_matches_pairwise_oracle():
    G = standard_group("cyclic", 4)
    graph = intersection_graph(G, G.trivial_subgroup(), 2)
    subs = subgroups_of_order(G, 2)
    oracle = {(i, j) for i, j in combinations(range(len(subs)), 2)
              if len(set(subs[i].elements) & set(subs[j].elements)) == 1}
    assert graph.edges == frozenset(oracle)
    assert find_packets(graph) == []
    assert max_clique_size(graph) == 1


@pytest.mark.parametrize("name, vertices, edges, triangles, clique", [
    ("s3xs3", 20, 82, 60, 3),
    ("d5xd5", 42, 326, 520, 3),
    ("order243_n9k3", 10, 27, 27, 3),
    ("order200_n10k2", 6, 12, 8, 3),
])
def test_known_packet_graphs(name, vertices, edges, triangles, clique):
    packet = known_packet(name)
    graph = intersection_graph(packet.group, packet.core_subgroup, packet.n)
    assert len(graph.vertices) == vertices
    assert len(graph.edges) == edges
    assert len(list(cliques_of_size(graph.neighbours, 3))) == triangles
    assert max_clique_size(graph) == clique
    found = {frozenset(p.subgroups) for p in find_packets(graph)}
    assert frozenset(packet.subgroups) in found


@pytest.mark.parametrize("name", KNOWN)
def test_known_packets_have_trivial_normal_core(name):
    packet = known_packet(name)
    assert normal_core(packet.group, packet.core_subgroup).order == 1
    assert reduce_packet(packet) is packet


def test_known_packet_shapes():
    assert [(known_packet(n).n, known_packet(n).k) for n in KNOWN] == [
        (6, 1), (10, 1), (9, 3), (10, 2)]


def test_z5xz5_max_clique_is_the_six_lines():
    G = load_group("order25", "Z5xZ5")
    graph = intersection_graph(G, G.trivial_subgroup(), 5)
    (packet,) = find_packets(graph, "max")
    assert packet.size == 6 and packet.q == 4


def test_validation_errors():
    G = standard_group("symmetric", 3)
    e = G.trivial_subgroup()
    twos = subgroups_of_order(G, 2)
    A3 = subgroups_of_order(G, 3)[0]
    with pytest.raises(SizeTooSmall):
        validate_packet(G, twos[:2], e)
    with pytest.raises(SizeViolation):
        validate_packet(G, twos, e)
    Z2sq = direct_product(standard_group("cyclic", 2), standard_group("cyclic", 2))
    subs = subgroups_of_order(Z2sq, 2)
    with pytest.raises(IndexViolation):
        validate_packet(Z2sq, [subs[0], subs[1], Z2sq.whole()], Z2sq.trivial_subgroup())
    with pytest.raises(IntersectionViolation):
        validate_packet(Z2sq, [subs[0], subs[0], subs[1]], Z2sq.trivial_subgroup())
    assert A3.order == 3


def test_intersection_graph_size_mismatch():
    G = standard_group("symmetric", 3)
    with pytest.raises(SizeMismatch):
        intersection_graph(G, G.trivial_subgroup(), 2)


def test_product_packets_multiply_orders():
    a = cayley_packet(standard_group("cyclic", 2))
    b = cayley_packet(standard_group("cyclic", 3))
    p = product_packets(a, b)
    assert p.group.order == a.group.order * b.group.order
    assert p.n == 6 and p.k == 1 and is_disjoint(p)
    unit = product_packets(trivial_packet(), a)
    assert unit.group.order == a.group.order and unit.n == a.n
    with pytest.raises(ArityMismatch):
        product_packets(a, trivial_packet(4))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_packet(q):
    p = field_packet(q)
    assert p.size == q + 1 and p.n == q and p.k == 1


def test_identifier_is_stable():
    p = known_packet("s3xs3")
    assert p.identifier == known_packet("s3xs3").identifier
    assert p.identifier.startswith("S3xS3@")
    assert p.identifier.split("@")[1].split(".") == [subgroup_hash(H) for H in p.subgroups]
    assert p.report()["clique_size"] == 3


def test_reduce_packet_quotients_by_core():
    # Z2 x Z2 x Z2 with K = third factor, H_i = K + a line of the first two factors
    G = load_group("small", "Z2^3")
    for K in subgroups_of_order(G, 2):
        graph = intersection_graph(G, K, 2)
        packets = find_packets(graph)
        if packets:
            reduced = reduce_packet(packets[0])
            assert reduced.k == 1 and reduced.n == 2 and reduced.group.order == 4
            return
    raise AssertionError("no packet found")
