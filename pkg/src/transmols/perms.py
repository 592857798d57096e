"""Permutations, permutation groups, subgroups and coset spaces.

Permutations act on ``{0, ..., d-1}`` and compose left to right:
``(p * q)[i] == q[p[i]]``, so ``p`` is applied first.  This is the convention
GAP uses when it prints products of cycles, which lets generator lists copied
out of GAP sessions be used unchanged.

Group elements are enumerated once and kept sorted lexicographically by image
sequence, so the identity is always element ``0``.  Subgroups are stored as
sets of element indices (plus a bitmask) of their parent group.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DegreeMismatch,
    EmptyGeneratorSet,
    GroupTooLarge,
    NotASubgroup,
    OrderDoesNotDivide,
    ParentMismatch,
    UnsupportedParameter,
)

DEFAULT_GROUP_CAP = 1000
"""Largest group order the subgroup machinery accepts unless told otherwise."""

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation(tuple):
    """A permutation stored as its image sequence."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if not images:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return _perm(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int, one_based: bool = True) -> Permutation:
        """Parse cycle notation such as ``"(1,2,4)(5,6)"``; ``"()"`` is the identity."""
        images = list(range(degree))
        shift = 1 if one_based else 0
        stripped = text.replace(" ", "")
        if _CYCLE_RE.sub("", stripped):
            raise ValueError(f"malformed cycle notation: {text!r}")
        seen = set()
        for body in _CYCLE_RE.findall(stripped):
            if not body:
                continue
            points = [int(x) - shift for x in body.split(",")]
            for p in points:
                if not 0 <= p < degree:
                    raise ValueError(f"point {p + shift} outside degree {degree}")
                if p in seen:
                    raise ValueError(f"point {p + shift} appears twice in {text!r}")
                seen.add(p)
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
        return _perm(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: Permutation) -> Permutation:
        if len(other) != len(self):
            raise DegreeMismatch(f"degrees {len(self)} and {len(other)} differ")
        return _perm([other[i] for i in self])

    def __rmul__(self, other):
        return NotImplemented

    def __pow__(self, k: int) -> Permutation:
        result = Permutation.identity(len(self))
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def __call__(self, point: int) -> int:
        return self[point]

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return _perm(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self) if i == j]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start] or self[start] == start:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def cycle_string(self, one_based: bool = True) -> str:
        shift = 1 if one_based else 0
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p + shift) for p in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string(one_based=False)}, degree={len(self)})"


def _perm(images) -> Permutation:
    # unchecked constructor for hot loops
    return tuple.__new__(Permutation, images)


class PermGroup:
    """A finite permutation group with all of its elements enumerated.

    Use :func:`generate_group` to build one.  ``elements`` is sorted
    lexicographically, so ``elements[0]`` is the identity.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: Sequence[Permutation], name: str | None = None):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.name = name or f"group{len(self.elements)}"
        self.index = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.index

    def __repr__(self) -> str:
        return f"PermGroup({self.name!r}, degree={self.degree}, order={self.order})"

    @cached_property
    def table(self) -> list[list[int]]:
        """Multiplication table on element indices: ``table[i][j]`` indexes ``e_i * e_j``."""
        idx = self.index
        els = self.elements
        return [[idx[_perm([h[x] for x in g])] for h in els] for g in els]

    @cached_property
    def inverses(self) -> list[int]:
        table = self.table
        return [row.index(0) for row in table]

    @cached_property
    def element_orders(self) -> list[int]:
        return [g.order() for g in self.elements]

    def is_abelian(self) -> bool:
        t = self.table
        gens = [self.index[g] for g in self.generators]
        return all(t[a][b] == t[b][a] for a in gens for b in gens)

    def closure_indices(self, gens: Iterable[int], start: Iterable[int] = (0,),
                        limit: int | None = None) -> list[int] | None:
        """Indices of the subgroup generated by ``gens`` (and ``start``).

        ``start`` must already be a union of cosets of the answer's subgroup or
        just the identity.  Returns ``None`` once more than ``limit`` elements
        have been produced.
        """
        table = self.table
        gens = list(gens)
        seen = bytearray(self.order)
        elems = []
        for s in start:
            if not seen[s]:
                seen[s] = 1
                elems.append(s)
        for x in elems:
            row = table[x]
            for g in gens:
                y = row[g]
                if not seen[y]:
                    seen[y] = 1
                    elems.append(y)
            if limit is not None and len(elems) > limit:
                return None
        elems.sort()
        return elems

    def subgroup(self, generators: Iterable[Permutation]) -> Subgroup:
        """The subgroup generated by ``generators`` (which must lie in this group)."""
        gens = list(generators)
        idx = []
        for g in gens:
            if g not in self.index:
                raise NotASubgroup(f"{g!r} is not an element of {self.name}")
            idx.append(self.index[g])
        return Subgroup._from_indices(self, self.closure_indices(idx), gens)

    def subgroup_from_elements(self, elements: Iterable[Permutation]) -> Subgroup:
        """Wrap an explicit element set, checking closure."""
        try:
            idx = sorted({self.index[g] for g in elements})
        except KeyError as exc:
            raise NotASubgroup(f"element {exc.args[0]!r} not in {self.name}") from None
        if not idx or idx[0] != 0:
            raise NotASubgroup("element set lacks the identity")
        mask = _mask(idx)
        table = self.table
        for a in idx:
            row = table[a]
            for b in idx:
                if not mask >> row[b] & 1:
                    raise NotASubgroup("element set is not closed under composition")
        return Subgroup._from_indices(self, idx, None)

    def trivial_subgroup(self) -> Subgroup:
        return Subgroup._from_indices(self, [0], [])

    def whole(self) -> Subgroup:
        return Subgroup._from_indices(self, list(range(self.order)), list(self.generators))


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Subgroup:
    """A subgroup of a :class:`PermGroup`, held as sorted element indices."""

    __slots__ = ("parent", "indices", "mask", "_generators", "__dict__")

    def __init__(self, parent: PermGroup, indices: Sequence[int],
                 generators: Sequence[Permutation] | None = None):
        self.parent = parent
        self.indices = tuple(indices)
        self.mask = _mask(self.indices)
        self._generators = None if generators is None else tuple(generators)

    @classmethod
    def _from_indices(cls, parent, indices, generators):
        return cls(parent, indices, generators)

    @property
    def order(self) -> int:
        return len(self.indices)

    @property
    def elements(self) -> list[Permutation]:
        els = self.parent.elements
        return [els[i] for i in self.indices]

    @property
    def generators(self) -> tuple[Permutation, ...]:
        if self._generators is None:
            self._generators = tuple(self.parent.elements[i]
                                     for i in _generating_set(self.parent, self.indices))
        return self._generators

    @cached_property
    def key(self) -> bytes:
        """Serialized sorted element list; the subgroup's identity for ordering and hashing."""
        width = max(1, (self.parent.order.bit_length() + 7) // 8)
        return b"".join(i.to_bytes(width, "big") for i in self.indices)

    def __contains__(self, g) -> bool:
        if isinstance(g, int):
            return bool(self.mask >> g & 1)
        i = self.parent.index.get(g)
        return i is not None and bool(self.mask >> i & 1)

    def __le__(self, other: Subgroup) -> bool:
        return self.parent is other.parent and self.mask & other.mask == self.mask

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.mask == other.mask)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __len__(self) -> int:
        return len(self.indices)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.name})"


def _generating_set(group: PermGroup, indices: Sequence[int]) -> list[int]:
    """Greedy generating set: add the smallest element not yet generated."""
    gens: list[int] = []
    have = {0}
    for i in indices:
        if i not in have:
            gens.append(i)
            have = set(group.closure_indices(gens))
            if len(have) == len(indices):
                break
    return gens


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets ``gH`` of ``subgroup`` in ``parent``.

    ``cosets[c]`` holds the sorted element indices of coset ``c``; its first
    entry is the minimal element and serves as the representative.  Cosets
    are numbered in increasing order of representative.
    """

    parent: PermGroup
    subgroup: Subgroup
    cosets: tuple[tuple[int, ...], ...]
    coset_of: tuple[int, ...]

    @property
    def index(self) -> int:
        return len(self.cosets)

    @property
    def representatives(self) -> list[Permutation]:
        els = self.parent.elements
        return [els[c[0]] for c in self.cosets]


def generate_group(degree: int | None, generators: Sequence[Permutation],
                   name: str | None = None, max_order: int | None = None) -> PermGroup:
    """Close ``generators`` under composition.

    Raises :class:`GroupTooLarge` when ``max_order`` is given and exceeded.
    """
    gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
    if degree is None:
        if not gens:
            raise EmptyGeneratorSet("no generators and no degree given")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise DegreeMismatch(f"generator {g!r} has degree {len(g)}, expected {degree}")
    ident = Permutation.identity(degree)
    seen = {ident}
    elems = [ident]
    gens_nontrivial = [g for g in gens if not g.is_identity()]
    for x in elems:
        for g in gens_nontrivial:
            y = _perm([g[i] for i in x])
            if y not in seen:
                seen.add(y)
                elems.append(y)
        if max_order is not None and len(elems) > max_order:
            raise GroupTooLarge(f"group exceeds {max_order} elements")
    elems.sort()
    return PermGroup(degree, gens, elems, name)


def standard_group(kind: str, n: int) -> PermGroup:
    """Cyclic, dihedral or symmetric group in its natural action on ``n`` points."""
    if n < 1:
        raise UnsupportedParameter(f"n must be >= 1, got {n}")
    rotation = _perm([(i + 1) % n for i in range(n)])
    if kind == "cyclic":
        return generate_group(n, [rotation], name=f"Z{n}")
    if kind == "dihedral":
        if n < 3:
            raise UnsupportedParameter("dihedral groups need n >= 3")
        reflection = _perm([(-i) % n for i in range(n)])
        return generate_group(n, [rotation, reflection], name=f"D{n}")
    if kind == "symmetric":
        gens = [rotation]
        if n >= 2:
            gens.append(_perm([1, 0] + list(range(2, n))))
        return generate_group(n, gens, name=f"S{n}")
    raise UnsupportedParameter(f"unknown group kind {kind!r}")


def pair_element(first: Permutation, second: Permutation) -> Permutation:
    """The element ``(first, second)`` of a direct product acting on the disjoint union."""
    shift = len(first)
    return _perm(tuple(first) + tuple(x + shift for x in second))


def direct_product(G: PermGroup, H: PermGroup, name: str | None = None) -> PermGroup:
    """``G x H`` acting on the disjoint union of the two point sets.

    The factors are kept on the result as ``factors``; use :func:`pair_element`
    (or :func:`product_embeddings`) to map factor elements in.
    """
    gens = [pair_element(g, H.identity) for g in G.generators]
    gens += [pair_element(G.identity, h) for h in H.generators]
    # both factor lists are sorted, so the concatenations come out sorted
    elems = [pair_element(g, h) for g in G.elements for h in H.elements]
    P = PermGroup(G.degree + H.degree, gens, elems, name or f"{G.name}x{H.name}")
    P.factors = (G, H)
    return P


def product_embeddings(P: PermGroup):
    """Index maps of the two factor embeddings of a :func:`direct_product` group."""
    G, H = P.factors
    m = H.order
    left = [i * m for i in range(G.order)]
    right = list(range(m))
    return left, right


def subgroups_of_order(G: PermGroup, m: int, cap: int = DEFAULT_GROUP_CAP,
                       containing: Subgroup | None = None) -> list[Subgroup]:
    """Every subgroup of order ``m`` (containing ``containing`` if given), sorted by key.

    Cyclic-extension search: start from ``containing`` (or the trivial group)
    and repeatedly adjoin one element, discarding any closure whose order does
    not divide ``m``.  Every subgroup of order ``m`` is the end of such a
    chain, so the search is complete.
    """
    N = G.order
    if m < 1 or N % m:
        raise OrderDoesNotDivide(f"{m} does not divide |G| = {N}")
    if N > cap:
        raise GroupTooLarge(f"|G| = {N} exceeds the cap {cap}")
    base = G.trivial_subgroup() if containing is None else _as_subgroup_of(G, containing)
    if m % base.order:
        return []
    if m == base.order:
        return [base]
    table = G.table
    orders = G.element_orders
    usable = [g for g in range(N) if m % orders[g] == 0]

    seen: set[int] = {base.mask}
    frontier: list[tuple[list[int], list[int]]] = [(list(base.indices),
                                                     [G.index[x] for x in base.generators])]
    found: list[Subgroup] = []
    while frontier:
        layer, frontier = frontier, []
        for indices, gens in layer:
            tried = bytearray(N)
            for i in indices:
                tried[i] = 1
            for g in usable:
                if tried[g]:
                    continue
                # <S, g> == <S, g*s> for s in S: skip the whole left coset
                row = table[g]
                for s in indices:
                    tried[row[s]] = 1
                H = G.closure_indices(gens + [g], start=indices, limit=m)
                if H is None or m % len(H):
                    continue
                mask = _mask(H)
                if mask in seen:
                    continue
                seen.add(mask)
                if len(H) == m:
                    found.append(Subgroup(G, H, [G.elements[i] for i in gens + [g]]))
                else:
                    frontier.append((H, gens + [g]))
    found.sort(key=lambda s: s.key)
    return found


def _as_subgroup_of(G: PermGroup, H: Subgroup) -> Subgroup:
    if H.parent is G:
        return H
    try:
        return G.subgroup_from_elements(H.elements)
    except NotASubgroup:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        raise NotASubgroup(str(exc)) from exc


def intersect_subgroups(H1: Subgroup, H2: Subgroup) -> Subgroup:
    if H1.parent is not H2.parent:
        raise ParentMismatch("subgroups live in different parent groups")
    mask = H1.mask & H2.mask
    return Subgroup(H1.parent, [i for i in H1.indices if mask >> i & 1])


def left_cosets(G: PermGroup, H: Subgroup) -> CosetSpace:
    H = _as_subgroup_of(G, H)
    table = G.table
    coset_of = [-1] * G.order
    cosets = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        c = len(cosets)
        row = table[g]
        members = sorted(row[h] for h in H.indices)
        for x in members:
            coset_of[x] = c
        cosets.append(tuple(members))
    return CosetSpace(G, H, tuple(cosets), tuple(coset_of))


def coset_action(G: PermGroup, H: Subgroup):
    """Permutation action of ``G`` on its left cosets of ``H``.

    ``g`` is sent to the permutation ``xH -> g^-1 xH`` of the coset numbers of
    :func:`left_cosets`.  Translating by the inverse makes the map a
    homomorphism under left-to-right composition; the image group and the
    kernel (the normal core of ``H``) are those of left translation.

    Returns ``(image_group, images)`` with ``images[i]`` the image of
    ``G.elements[i]``.
    """
    space = left_cosets(G, H)
    table = G.table
    inv = G.inverses
    reps = [c[0] for c in space.cosets]
    coset_of = space.coset_of
    images = []
    for g in range(G.order):
        row = table[inv[g]]
        images.append(_perm([coset_of[row[r]] for r in reps]))
    gens = [images[G.index[g]] for g in G.generators]
    distinct = sorted(set(images))
    Q = PermGroup(space.index, gens, distinct, name=f"{G.name}/{H.order}")
    return Q, images


def normal_core(G: PermGroup, K: Subgroup) -> Subgroup:
    """Largest normal subgroup of ``G`` inside ``K``: the intersection of all conjugates."""
    K = _as_subgroup_of(G, K)
    table = G.table
    inv = G.inverses
    mask = K.mask
    space = left_cosets(G, K)
    for coset in space.cosets:
        g = coset[0]
        gi = inv[g]
        row = table[g]
        conj = 0
        for x in K.indices:
            conj |= 1 << table[row[x]][gi]
        mask &= conj
        if mask == 1:
            break
    return Subgroup(G, [i for i in K.indices if mask >> i & 1])


def is_normal(G: PermGroup, K: Subgroup) -> bool:
    return normal_core(G, K).order == K.order


def center(G: PermGroup) -> Subgroup:
    t = G.table
    gens = [G.index[g] for g in G.generators]
    return Subgroup(G, [z for z in range(G.order) if all(t[z][g] == t[g][z] for g in gens)])
