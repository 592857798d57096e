from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transmols.catalog import load_catalog
from transmols.errors import DegreeMismatch, NotASubgroup
from transmols.perms import (
    Permutation,
    center,
    coset_action,
    direct_product,
    generate_group,
    intersect_subgroups,
    is_normal,
    left_cosets,
    normal_core,
    standard_group,
    subgroups_of_order,
)


def perms(degree):
    return st.permutations(range(degree)).map(Permutation)


def naive_closure(gens, degree):
    elems = {Permutation.identity(degree)}
    frontier = list(elems)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return elems


def all_subgroups_oracle(G):
    """Every subgroup, as element sets, from closures of all triples of elements."""
    found = set()
    for triple in combinations(G.elements, 3):
        found.add(frozenset(naive_closure(triple, G.degree)))
    for g in G.elements:
        found.add(frozenset(naive_closure([g], G.degree)))
    return found


def test_composition_is_left_to_right():
    p = Permutation.from_cycles("(1,2)", 3)
    q = Permutation.from_cycles("(2,3)", 3)
    # p first, then q: 0 -> 1 -> 2
    assert (p * q)[0] == 2
    assert (p * q) == Permutation([2, 0, 1])


def test_cycle_string_roundtrip():
    p = Permutation.from_cycles("(1,4,2)(3,5)", 6)
    assert Permutation.from_cycles(p.cycle_string(), 6) == p
    assert p.order() == 6
    assert p.fixed_points() == [5]


def test_from_cycles_rejects_bad_points():
    with pytest.raises(ValueError):
        Permutation.from_cycles("(1,7)", 3)


@given(perms(6), perms(6), perms(6))
def test_group_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert (p * q).inverse() == q.inverse() * p.inverse()
    assert (p * p.inverse()).is_identity()
    assert (p ** p.order()).is_identity()


@pytest.mark.parametrize("kind, n, order", [
    ("cyclic", 1, 1), ("cyclic", 5, 5), ("dihedral", 4, 8), ("dihedral", 5, 10),
    ("symmetric", 3, 6), ("symmetric", 4, 24),
])
def test_standard_group_orders(kind, n, order):
    G = standard_group(kind, n)
    assert G.order == order
    assert G.elements[0].is_identity()
    assert list(G.elements) == sorted(G.elements)


@given(st.lists(perms(5), min_size=1, max_size=3))
def test_closure_matches_naive_oracle(gens):
    G = generate_group(5, gens)
    assert set(G.elements) == naive_closure(gens, 5)


def test_generators_of_mixed_degree_rejected():
    with pytest.raises(DegreeMismatch):
        generate_group(None, [Permutation.identity(2), Permutation.identity(3)])


def test_subgroup_from_elements_checks_closure():
    G = standard_group("symmetric", 3)
    with pytest.raises(NotASubgroup):
        G.subgroup_from_elements([Permutation.from_cycles("(1,2)", 3), G.identity,
                                  Permutation.from_cycles("(2,3)", 3)])


SMALL = {G.name: G for G in load_catalog("small")}


@pytest.mark.parametrize("name", ["S3", "Z2xZ2", "D4", "Q8", "A4", "Z6xZ2", "Dic3", "Z2^3"])
def test_subgroups_of_order_matches_oracle(name):
    G = SMALL[name]
    oracle = all_subgroups_oracle(G)
    for m in range(1, G.order + 1):
        if G.order % m:
            continue
        got = {frozenset(H.elements) for H in subgroups_of_order(G, m)}
        assert got == {H for H in oracle if len(H) == m}


def test_s3xs3_subgroup_counts():
    S3 = standard_group("symmetric", 3)
    P = direct_product(S3, S3)
    counts = [len(subgroups_of_order(P, m)) for m in (1, 2, 3, 4, 6, 9, 12, 18, 36)]
    assert counts == [1, 15, 4, 9, 20, 1, 6, 3, 1]


def test_direct_product_with_trivial_factor():
    H = standard_group("dihedral", 4)
    P = direct_product(standard_group("cyclic", 1), H)
    assert P.order == H.order


def test_coset_action_of_z4_on_z4_mod_z2():
    Z4 = standard_group("cyclic", 4)
    g = Z4.generators[0]
    Q, images = coset_action(Z4, Z4.subgroup([g * g]))
    assert Q.degree == 2 and Q.order == 2
    assert len(images) == 4


def test_coset_action_is_a_homomorphism():
    S4 = standard_group("symmetric", 4)
    H = subgroups_of_order(S4, 6)[0]
    Q, images = coset_action(S4, H)
    for a in range(0, 24, 5):
        for b in range(0, 24, 7):
            ab = S4.index[S4.elements[a] * S4.elements[b]]
            assert images[ab] == images[a] * images[b]


def test_left_cosets_partition_the_group():
    D5 = standard_group("dihedral", 5)
    H = subgroups_of_order(D5, 2)[0]
    space = left_cosets(D5, H)
    assert space.index == 5
    assert sorted(i for c in space.cosets for i in c) == list(range(10))
    assert all(space.coset_of[i] == c for c, coset in enumerate(space.cosets) for i in coset)


def test_normal_core_and_center():
    S3 = standard_group("symmetric", 3)
    H = subgroups_of_order(S3, 2)[0]
    assert normal_core(S3, H).order == 1
    assert not is_normal(S3, H)
    A3 = subgroups_of_order(S3, 3)[0]
    assert is_normal(S3, A3) and normal_core(S3, A3) == A3
    assert center(S3).order == 1
    assert center(SMALL["Q8"]).order == 2
    assert center(SMALL["Z2^3"]).order == 8


def test_intersection_of_subgroups():
    S3 = standard_group("symmetric", 3)
    a, b = subgroups_of_order(S3, 2)[:2]
    assert intersect_subgroups(a, b).order == 1
    assert intersect_subgroups(a, a) == a
