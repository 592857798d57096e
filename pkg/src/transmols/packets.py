"""Group packets: validation, discovery through intersection graphs, reduction and products.

A packet is a group ``G`` with subgroups ``H_1, ..., H_{q+2}`` and ``K`` such
that ``H_i & H_j == K`` for ``i != j`` and ``[G:H_i] == [H_i:K] == n``.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import (
    ArityMismatch,
    IndexViolation,
    IntersectionViolation,
    NotASubgroup,
    ParentMismatch,
    SizeMismatch,
    SizeTooSmall,
    SizeViolation,
)
from .perms import (
    DEFAULT_GROUP_CAP,
    Permutation,
    PermGroup,
    Subgroup,
    coset_action,
    direct_product,
    generate_group,
    normal_core,
    pair_element,
    subgroups_of_order,
)


def subgroup_hash(H: Subgroup) -> str:
    return hashlib.sha1(H.key).hexdigest()[:12]


@dataclass(frozen=True)
class GroupPacket:
    group: PermGroup
    subgroups: tuple[Subgroup, ...]
    core_subgroup: Subgroup
    n: int
    k: int

    @property
    def q(self) -> int:
        """Number of mutually orthogonal squares the packet yields."""
        return len(self.subgroups) - 2

    @property
    def size(self) -> int:
        return len(self.subgroups)

    @property
    def identifier(self) -> str:
        """Stable reference ``name@hash1.hash2...``: group name plus subgroup hashes in order."""
        return self.group.name + "@" + ".".join(subgroup_hash(H) for H in self.subgroups)

    def report(self) -> dict:
        return {
            "id": self.identifier,
            "group": self.group.name,
            "group_order": self.group.order,
            "n": self.n,
            "k": self.k,
            "clique_size": self.size,
            "disjoint": is_disjoint(self),
            "subgroups": [[g.cycle_string() for g in H.generators] for H in self.subgroups],
            "core": [g.cycle_string() for g in self.core_subgroup.generators],
        }


def _in_group(G: PermGroup, H: Subgroup) -> Subgroup:
    if H.parent is G:
        return H
    try:
        return G.subgroup_from_elements(H.elements)
    except NotASubgroup:
        raise ParentMismatch("subgroup does not lie in the packet's group") from None


def validate_packet(G: PermGroup, subgroups: Sequence[Subgroup], K: Subgroup) -> GroupPacket:
    """Check the packet conditions and return the packet.

    Raises :class:`SizeViolation` when ``|G|`` is not ``|K| n^2``,
    :class:`IndexViolation` when some ``[G:H_i] != n`` and
    :class:`IntersectionViolation` when some ``H_i & H_j != K``.
    """
    if len(subgroups) < 3:
        raise SizeTooSmall(f"a packet needs at least 3 subgroups, got {len(subgroups)}")
    hs = tuple(_in_group(G, H) for H in subgroups)
    K = _in_group(G, K)
    k = K.order
    n = math.isqrt(G.order // k)
    if G.order % k or k * n * n != G.order:
        raise SizeViolation(f"|G| = {G.order} is not |K| * n^2 with |K| = {k}")
    for i, H in enumerate(hs):
        if H.order * n != G.order:
            raise IndexViolation(f"[G:H_{i}] = {G.order / H.order:g}, expected {n}")
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            if hs[i].mask & hs[j].mask != K.mask:
                raise IntersectionViolation(f"H_{i} & H_{j} differs from K")
    return GroupPacket(G, hs, K, n, k)


def is_disjoint(packet: GroupPacket) -> bool:
    return packet.k == 1


@dataclass(frozen=True)
class IntersectionGraph:
    """Subgroups of order ``kn`` containing ``K``; edges join pairs meeting exactly in ``K``."""

    group: PermGroup
    core: Subgroup
    n: int
    vertices: tuple[Subgroup, ...]
    neighbours: tuple[int, ...]  # bitmask of adjacent vertex indices

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, nb in enumerate(self.neighbours)
                         for j in range(i + 1, len(self.vertices)) if nb >> j & 1)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.neighbours[i] >> j & 1)


def intersection_graph(G: PermGroup, K: Subgroup, n: int,
                       cap: int = DEFAULT_GROUP_CAP) -> IntersectionGraph:
    K = _in_group(G, K)
    if n < 2 or K.order * n * n != G.order:
        raise SizeMismatch(f"|K| * n^2 = {K.order * n * n} but |G| = {G.order}")
    vertices = tuple(subgroups_of_order(G, K.order * n, cap=cap, containing=K))
    masks = [H.mask for H in vertices]
    neighbours = []
    for i, a in enumerate(masks):
        nb = 0
        for j, b in enumerate(masks):
            if i != j and a & b == K.mask:
                nb |= 1 << j
        neighbours.append(nb)
    return IntersectionGraph(G, K, n, vertices, tuple(neighbours))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def cliques_of_size(neighbours: Sequence[int], size: int):
    """Cliques with exactly ``size`` vertices, as increasing index tuples, lexicographically."""

    def extend(clique, candidates):
        if len(clique) == size:
            yield tuple(clique)
            return
        for v in _bits(candidates):
            # only later vertices, so each clique appears once in increasing order
            later = neighbours[v] >> (v + 1) << (v + 1)
            yield from extend(clique + [v], candidates & later)

    yield from extend([], (1 << len(neighbours)) - 1)


def maximal_cliques(neighbours: Sequence[int]) -> list[tuple[int, ...]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), sorted."""
    out = []

    def expand(R, P, X):
        if not P and not X:
            out.append(tuple(sorted(R)))
            return
        pivot = max(_bits(P | X), key=lambda u: bin(P & neighbours[u]).count("1"))
        for v in list(_bits(P & ~neighbours[pivot])):
            expand(R + [v], P & neighbours[v], X & neighbours[v])
            P &= ~(1 << v)
            X |= 1 << v

    expand([], (1 << len(neighbours)) - 1, 0)
    out.sort()
    return out


def maximum_cliques(neighbours: Sequence[int]) -> list[tuple[int, ...]]:
    found = maximal_cliques(neighbours)
    if not found:
        return []
    best = max(len(c) for c in found)
    return [c for c in found if len(c) == best]


def find_packets(graph: IntersectionGraph, size: int | str = 3,
                 limit: int | None = None) -> list[GroupPacket]:
    """Packets from cliques of ``graph``.

    ``size`` is a clique size (at least 3) or ``"max"`` for the maximum
    cliques; maximum cliques with fewer than 3 vertices give no packets.
    ``limit`` caps the number of packets returned.
    """
    if size == "max":
        cliques = [c for c in maximum_cliques(graph.neighbours) if len(c) >= 3]
    else:
        size = int(size)
        if size < 3:
            raise SizeTooSmall(f"clique size must be at least 3, got {size}")
        cliques = cliques_of_size(graph.neighbours, size)
    out = []
    for c in cliques:
        if limit is not None and len(out) >= limit:
            break
        out.append(validate_packet(graph.group, [graph.vertices[i] for i in c], graph.core))
    return out


def max_clique_size(graph: IntersectionGraph) -> int:
    found = maximal_cliques(graph.neighbours) if graph.vertices else []
    return max((len(c) for c in found), default=0)


def packet_from_clique(graph: IntersectionGraph, clique: Sequence[int]) -> GroupPacket:
    return validate_packet(graph.group, [graph.vertices[i] for i in clique], graph.core)


def reduce_packet(packet: GroupPacket) -> GroupPacket:
    """Quotient by the normal core of ``K``; a packet with trivial core is returned unchanged."""
    G = packet.group
    core = normal_core(G, packet.core_subgroup)
    if core.order == 1:
        return packet
    Q, images = coset_action(G, core)
    Q.name = f"{G.name}/core{core.order}"

    def image(H: Subgroup) -> Subgroup:
        idx = sorted({Q.index[images[i]] for i in H.indices})
        return Subgroup(Q, idx, [images[G.index[g]] for g in H.generators])

    return validate_packet(Q, [image(H) for H in packet.subgroups], image(packet.core_subgroup))


def _product_subgroup(P: PermGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    m = P.factors[1].order
    idx = sorted(i * m + j for i in A.indices for j in B.indices)
    ea, eb = A.parent.identity, B.parent.identity
    gens = [pair_element(g, eb) for g in A.generators] + [pair_element(ea, h) for h in B.generators]
    return Subgroup(P, idx, gens)


def product_packets(p1: GroupPacket, p2: GroupPacket) -> GroupPacket:
    """Componentwise product over ``G_1 x G_2``; orders multiply and disjointness is kept."""
    if p1.size != p2.size:
        raise ArityMismatch(f"packets have {p1.size} and {p2.size} subgroups")
    P = direct_product(p1.group, p2.group)
    hs = [_product_subgroup(P, a, b) for a, b in zip(p1.subgroups, p2.subgroups)]
    return validate_packet(P, hs, _product_subgroup(P, p1.core_subgroup, p2.core_subgroup))


def trivial_packet(size: int = 3) -> GroupPacket:
    """The packet over the one-element group; the unit for :func:`product_packets`."""
    G = generate_group(1, [Permutation.identity(1)], name="Z1")
    e = G.trivial_subgroup()
    return validate_packet(G, [e] * size, e)


def cayley_packet(G: PermGroup) -> GroupPacket:
    """``(G x G; {e} x G, G x {e}, diagonal)``, the packet of the Cayley table of ``G``."""
    P = direct_product(G, G, name=f"{G.name}x{G.name}")
    m = G.order
    right = Subgroup(P, range(m), [pair_element(G.identity, g) for g in G.generators])
    left = Subgroup(P, [i * m for i in range(m)], [pair_element(g, G.identity) for g in G.generators])
    diag = Subgroup(P, [i * m + i for i in range(m)], [pair_element(g, g) for g in G.generators])
    return validate_packet(P, [right, left, diag], P.trivial_subgroup())


def field_packet(q: int) -> GroupPacket:
    """Translations of ``F_q^2`` with the ``q + 1`` lines through the origin.

    The group acts regularly on the ``q^2`` points ``(x, y)``, numbered
    ``x * q + y``.  Subgroup order: ``{(0, t)}``, ``{(t, 0)}``, then
    ``{(t, m t)}`` for each nonzero ``m``.
    """
    from .fields import GF

    F = GF(q)
    pts = [(x, y) for x in range(q) for y in range(q)]

    def translation(a, b):
        return Permutation([F.add(x, a) * q + F.add(y, b) for x, y in pts])

    basis = [F.basis_element(i) for i in range(F.degree)]
    gens = [translation(b, 0) for b in basis] + [translation(0, b) for b in basis]
    G = generate_group(q * q, gens, name=f"F{q}^2")

    def line(dx, dy_of):
        elems = [translation(F.mul(dx, t), dy_of(t)) for t in range(q)]
        return G.subgroup_from_elements(elems)

    hs = [line(0, lambda t: t), line(1, lambda t: 0)]
    hs += [line(1, (lambda m: lambda t: F.mul(m, t))(m)) for m in range(1, q)]
    return validate_packet(G, hs, G.trivial_subgroup())
