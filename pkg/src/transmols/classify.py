"""Autotopy groups, transitivity and the four-way classification of Latin squares."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .canon import (
    AutomorphismGroup,
    Certificate,
    canonical_certificate,
    graph_automorphisms,
    mols_graph,
)
from .errors import GroupTooLarge, GroupTooLargeForRegularSearch, ShapeMismatch
from .mols import (
    OrthogonalArray,
    Square,
    array_to_squares,
    check_latin,
    quadrangle_criterion,
    square_to_array,
)
from .perms import Permutation, PermGroup, _perm, generate_group

REGULAR_SEARCH_CAP = 10 ** 6
REPORT_SCHEMA = "transmols.classification/1"


class TransitivityClass(str, enum.Enum):
    GROUP_BASED = "group_based"
    SIMPLY_TRANSITIVE_NOT_GROUP = "simply_transitive_not_group"
    TRANSITIVE_NOT_SIMPLY = "transitive_not_simply"
    NON_TRANSITIVE = "non_transitive"
    # sets of two or more squares, where group-basedness is not tested
    SIMPLY_TRANSITIVE = "simply_transitive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AutotopyGroup:
    """Autotopies of an array acting on its ``n^2`` rows.

    ``projections[i]`` holds the induced permutations of the symbols of
    coordinate ``i``, one per generator.
    """

    n: int
    generators: tuple[Permutation, ...]
    projections: tuple[tuple[Permutation, ...], ...]
    order: int

    @cached_property
    def orbits(self) -> list[list[int]]:
        N = self.n * self.n
        seen = [False] * N
        out = []
        for start in range(N):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            for x in orbit:
                for g in self.generators:
                    y = g[x]
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
            out.append(sorted(orbit))
        return out

    def perm_group(self, max_order: int | None = REGULAR_SEARCH_CAP) -> PermGroup:
        """All elements, as a group on the rows; refuses groups above ``max_order``."""
        if max_order is not None and self.order > max_order:
            raise GroupTooLarge(f"autotopy group of order {self.order} exceeds {max_order}")
        N = self.n * self.n
        G = generate_group(N, self.generators or [Permutation.identity(N)], name="autotopy")
        if G.order != self.order:  # pragma: no cover - guards the search engine
            raise AssertionError(f"closure has {G.order} elements, search reported {self.order}")
        return G


def _graph_to_autotopy(array: OrthogonalArray, aut: AutomorphismGroup) -> AutotopyGroup:
    n = array.n
    t = array.q_plus_2
    base3 = t + t * n
    gens = []
    projections = [[] for _ in range(t)]
    for g in aut.generators:
        rows = _perm([g[base3 + r] - base3 for r in range(n * n)])
        if rows.is_identity():
            continue
        gens.append(rows)
        for i in range(t):
            off = t + i * n
            projections[i].append(_perm([g[off + s] - off for s in range(n)]))
    return AutotopyGroup(n, tuple(gens), tuple(tuple(p) for p in projections), aut.order)


def autotopy_group(array: OrthogonalArray) -> AutotopyGroup:
    return _graph_to_autotopy(array, graph_automorphisms(mols_graph(array, "autotopy")))


def is_transitive(array: OrthogonalArray, autotopy: AutotopyGroup | None = None) -> bool:
    A = autotopy or autotopy_group(array)
    return len(A.orbits) == 1


def find_regular_subgroup(autotopy: AutotopyGroup, cap: int = REGULAR_SEARCH_CAP
                          ) -> list[Permutation] | None:
    """Elements of a subgroup acting regularly on the rows, or ``None``.

    Builds subgroups from fixed-point-free elements only, adjoining at each
    step an element that moves row 0 outside the current orbit of row 0, and
    abandons a closure as soon as it has a non-identity element with a fixed
    point or grows past ``n^2``.
    """
    N = autotopy.n * autotopy.n
    if len(autotopy.orbits) != 1 or autotopy.order % N:
        return None
    if autotopy.order > cap:
        raise GroupTooLargeForRegularSearch(
            f"autotopy group of order {autotopy.order} exceeds the search cap {cap}")
    A = autotopy.perm_group(max_order=None)
    by_image: list[list[Permutation]] = [[] for _ in range(N)]
    for g in A.elements[1:]:
        if all(g[x] != x for x in range(N)):
            by_image[g[0]].append(g)
    identity = A.identity
    visited: set[frozenset] = set()

    def closure(elems: list[Permutation], gens: list[Permutation]) -> list[Permutation] | None:
        have = set(elems)
        queue = list(elems)
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for h in gens:
                y = _perm([h[p] for p in x])
                if y in have:
                    continue
                if len(have) >= N or any(y[p] == p for p in range(N)):
                    return None
                have.add(y)
                queue.append(y)
        return queue

    def search(elems: list[Permutation], gens: list[Permutation]) -> list[Permutation] | None:
        if len(elems) == N:
            return elems
        orbit = {x[0] for x in elems}
        p = next(q for q in range(N) if q not in orbit)
        for g in by_image[p]:
            H = closure(elems, gens + [g])
            if H is None or N % len(H):
                continue
            key = frozenset(H)
            if key in visited:
                continue
            visited.add(key)
            found = search(H, gens + [g])
            if found is not None:
                return found
        return None

    result = search([identity], [])
    return sorted(result) if result is not None else None


def is_simply_transitive(array: OrthogonalArray, autotopy: AutotopyGroup | None = None,
                         cap: int = REGULAR_SEARCH_CAP) -> bool:
    A = autotopy or autotopy_group(array)
    return find_regular_subgroup(A, cap) is not None


def main_class_certificate(square_or_array) -> Certificate:
    """Paratopy certificate: equal exactly for squares (or arrays) in the same main class."""
    array = square_or_array if isinstance(square_or_array, OrthogonalArray) \
        else square_to_array(square_or_array)
    return canonical_certificate(mols_graph(array, "paratopy"))


def isotopy_certificate(array: OrthogonalArray) -> Certificate:
    return canonical_certificate(mols_graph(array, "isotopy"))


def are_isotopic(a1: OrthogonalArray, a2: OrthogonalArray) -> bool:
    if a1.n != a2.n or a1.q_plus_2 != a2.q_plus_2:
        raise ShapeMismatch(f"arrays of shape ({a1.q_plus_2}, {a1.n}) and ({a2.q_plus_2}, {a2.n})")
    return isotopy_certificate(a1) == isotopy_certificate(a2)


@dataclass(frozen=True)
class Classification:
    order: int
    certificate: Certificate
    autotopy_order: int
    cls: TransitivityClass
    orbit_count: int
    regular_subgroup_found: bool

    def report(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "order": self.order,
            "certificate_hex": self.certificate.hex(),
            "autotopy_order": self.autotopy_order,
            "class": self.cls.value,
            "orbit_count": self.orbit_count,
            "regular_subgroup_found": self.regular_subgroup_found,
        }


def classify_array(array: OrthogonalArray, cap: int = REGULAR_SEARCH_CAP) -> Classification:
    """Classify an array; with three coordinates this is the square classification.

    Arrays with more coordinates are reported as ``simply_transitive``,
    ``transitive_not_simply`` or ``non_transitive``: the group-based test
    applies to single squares only.
    """
    A = autotopy_group(array)
    orbit_count = len(A.orbits)
    single = array.q_plus_2 == 3
    if single and quadrangle_criterion(array_to_squares(array)[0]):
        # a group table is simply transitive through its left and right translations
        cls, regular = TransitivityClass.GROUP_BASED, True
    elif orbit_count > 1:
        cls, regular = TransitivityClass.NON_TRANSITIVE, False
    else:
        regular = find_regular_subgroup(A, cap) is not None
        if not regular:
            cls = TransitivityClass.TRANSITIVE_NOT_SIMPLY
        elif single:
            cls = TransitivityClass.SIMPLY_TRANSITIVE_NOT_GROUP
        else:
            cls = TransitivityClass.SIMPLY_TRANSITIVE
    return Classification(array.n, main_class_certificate(array), A.order, cls,
                          orbit_count, regular)


def classify_square(square: Square, cap: int = REGULAR_SEARCH_CAP) -> TransitivityClass:
    return classify_square_report(square, cap).cls


def classify_square_report(square: Square, cap: int = REGULAR_SEARCH_CAP) -> Classification:
    check_latin(square)
    return classify_array(square_to_array(square), cap)
