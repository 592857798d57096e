from __future__ import annotations

from itertools import permutations

import pytest

from transmols.catalog import load_catalog
from transmols.classify import (
    REPORT_SCHEMA,
    TransitivityClass,
    are_isotopic,
    autotopy_group,
    classify_array,
    classify_square,
    classify_square_report,
    find_regular_subgroup,
    is_simply_transitive,
    is_transitive,
)
from transmols.enumeration import all_reduced_squares
from transmols.errors import GroupTooLargeForRegularSearch, NotLatin, ShapeMismatch
from transmols.io import load_fixture
from transmols.mols import cayley_square, field_mols, mols_to_array, square_to_array
from transmols.perms import generate_group

AUT_ORDERS = {
    "Z1": 1, "Z2": 1, "Z3": 2, "Z4": 2, "Z2xZ2": 6, "Z5": 4, "S3": 6, "Z6": 2, "Z7": 6,
    "Z8": 4, "Z4xZ2": 8, "Z2^3": 168, "D4": 8, "Q8": 24, "Z9": 6, "Z3xZ3": 48,
    "Z10": 4, "D5": 20, "Z12": 4, "Z6xZ2": 12, "A4": 24, "D6": 12, "Dic3": 12,
    "Z2^4": 20160,
}
SMALL = {G.name: G for G in load_catalog("small")}


def brute_autotopy_order(L) -> int:
    """Count (alpha, beta, gamma) with L[alpha(i)][beta(j)] = gamma(L[i][j])."""
    n = len(L)
    count = 0
    for alpha in permutations(range(n)):
        for beta in permutations(range(n)):
            gamma = [None] * n
            ok = True
            for i in range(n):
                for j in range(n):
                    s, t = L[i][j], L[alpha[i]][beta[j]]
                    if gamma[s] is None:
                        gamma[s] = t
                    elif gamma[s] != t:
                        ok = False
                        break
                if not ok:
                    break
            count += ok
    return count


@pytest.mark.parametrize("name", sorted(AUT_ORDERS))
def test_cayley_autotopy_order(name):
    G = SMALL[name]
    A = autotopy_group(square_to_array(cayley_square(G)))
    assert A.order == G.order ** 2 * AUT_ORDERS[name]


SMALL_SQUARES = [s for n in range(1, 5) for s in all_reduced_squares(n)]


@pytest.mark.parametrize("square", SMALL_SQUARES, ids=lambda s: f"n{s.n}")
def test_autotopy_order_matches_brute_force(square):
    assert autotopy_group(square_to_array(square)).order == brute_autotopy_order(square.cells)


def test_autotopy_generators_preserve_the_array():
    array = square_to_array(load_fixture("s3xs3"))
    A = autotopy_group(array)
    rows = set(array.rows)
    for g, *projs in zip(A.generators, *A.projections):
        for r, row in enumerate(array.rows):
            image = tuple(p[s] for p, s in zip(projs, row))
            assert image in rows
            assert array.rows[g[r]] == image


@pytest.mark.parametrize("name, cls, order", [
    ("s3xs3", TransitivityClass.SIMPLY_TRANSITIVE_NOT_GROUP, 108),
    ("order9_transitive", TransitivityClass.TRANSITIVE_NOT_SIMPLY, 486),
    ("d5xd5_M", TransitivityClass.SIMPLY_TRANSITIVE_NOT_GROUP, 500),
    ("order10_transitive", TransitivityClass.TRANSITIVE_NOT_SIMPLY, 400),
])
def test_example_squares(name, cls, order):
    report = classify_square_report(load_fixture(name))
    assert report.cls == cls
    assert report.autotopy_order == order
    assert report.orbit_count == 1


@pytest.mark.parametrize("q, order", [(3, 18), (4, 48), (5, 100), (7, 294), (8, 448), (9, 648)])
def test_field_mols_sets(q, order):
    result = classify_array(mols_to_array(field_mols(q)))
    assert result.autotopy_order == order
    assert result.cls == TransitivityClass.SIMPLY_TRANSITIVE
    assert result.regular_subgroup_found


def test_regular_subgroup_is_regular():
    A = autotopy_group(square_to_array(load_fixture("s3xs3")))
    elems = find_regular_subgroup(A)
    N = A.n * A.n
    assert len(elems) == N
    assert generate_group(N, elems).order == N
    assert sorted(g[0] for g in elems) == list(range(N))


def test_regular_search_cap():
    A = autotopy_group(square_to_array(load_fixture("order9_transitive")))
    with pytest.raises(GroupTooLargeForRegularSearch):
        find_regular_subgroup(A, cap=100)


def test_group_and_non_transitive_classes():
    assert classify_square([[0]]) == TransitivityClass.GROUP_BASED
    assert classify_square([[0, 1], [1, 0]]) == TransitivityClass.GROUP_BASED
    classes = [classify_square(s) for s in all_reduced_squares(5)]
    # group structures on 0..4 with identity 0: 4! / |Aut(Z5)|
    assert classes.count(TransitivityClass.GROUP_BASED) == 24 // 4
    assert classes.count(TransitivityClass.NON_TRANSITIVE) == 56 - 6
    with pytest.raises(NotLatin):
        classify_square([[0, 1], [0, 1]])


CORPUS = ([square_to_array(s) for n in range(2, 6) for s in all_reduced_squares(n)]
          + [square_to_array(load_fixture(name)) for name in
             ("s3xs3", "order9_transitive", "d5xd5_M", "order10_transitive")]
          + [mols_to_array(field_mols(q)) for q in (3, 4, 5)])


def test_simply_transitive_implies_transitive():
    for array in CORPUS:
        A = autotopy_group(array)
        if is_simply_transitive(array, A):
            assert is_transitive(array, A)


def test_report_fields():
    report = classify_square_report(load_fixture("s3xs3")).report()
    assert report["schema"] == REPORT_SCHEMA
    assert report["class"] == "simply_transitive_not_group"
    assert report["regular_subgroup_found"] is True
    assert len(report["certificate_hex"]) > 0


def test_are_isotopic_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        are_isotopic(square_to_array([[0, 1], [1, 0]]), mols_to_array(field_mols(3)))
