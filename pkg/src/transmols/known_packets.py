"""Explicit packets with non-trivial structure, given by subgroup generators.

Each entry names a group (built from a bundled catalog or from standard
groups) and lists generator cycles, 1-based, for ``H_1, H_2, H_3`` and ``K``.
"""

from __future__ import annotations

from .catalog import load_group
from .packets import GroupPacket, validate_packet
from .perms import Permutation, PermGroup, direct_product, standard_group

# (group factory name, H_1, H_2, H_3, K)
_SPECS = {
    "s3xs3": (
        "S3xS3",
        ["(2,3)", "(4,6,5)"],
        ["(1,3,2)", "(5,6)"],
        ["(1,2)(5,6)", "(1,2,3)(4,6,5)"],
        [],
    ),
    "d5xd5": (
        "D5xD5",
        ["(2,5)(3,4)", "(6,7,8,9,10)"],
        ["(1,4,2,5,3)", "(7,10)(8,9)"],
        ["(1,3)(4,5)(7,10)(8,9)", "(1,4,2,5,3)(6,7,8,9,10)"],
        [],
    ),
    "order243_n9k3": (
        "order243_n9k3",
        ["(1,6,3)(4,9,7)(10,14,18)(11,16,15)(12,17,13)",
         "(10,15,12)(11,17,14)(13,18,16)",
         "(2,5,8)(4,9,7)(11,14,17)(13,18,16)"],
        ["(1,6,3)(4,7,9)(10,12,15)(11,17,14)",
         "(1,2,4,3,5,7,6,8,9)(10,13,17,15,18,14,12,16,11)",
         "(1,3,6)(2,5,8)(4,7,9)(10,15,12)(11,17,14)(13,18,16)"],
        ["(1,5,4,6,2,9,3,8,7)(11,17,14)",
         "(1,6,3)(2,8,5)(4,9,7)",
         "(1,6,3)(4,7,9)(11,14,17)(13,18,16)"],
        ["(2,5,8)(4,9,7)(11,14,17)(13,18,16)"],
    ),
    "order200_n10k2": (
        "order200_n10k2",
        ["(2,6)(3,7)(4,15)(5,17)(8,24)(10,11)(13,19)(14,20)(16,21)(18,25)",
         "(2,10)(3,4)(5,18)(6,11)(7,15)(9,23)(12,22)(13,16)(17,25)(19,21)",
         "(1,14,8,24,20)(2,18,12,25,6)(3,19,13,7,23)(4,21,16,15,9)(5,22,17,11,10)"],
        ["(2,3)(4,6)(7,10)(8,9)(11,15)(12,14)(16,19)(17,18)(20,22)(23,24)",
         "(2,11)(3,15)(4,7)(5,25)(6,10)(8,24)(9,23)(12,22)(13,21)(14,20)(16,19)(17,18)",
         "(1,25,21,13,5)(2,15,23,17,8)(3,11,24,18,9)(4,19,10,20,12)(6,16,7,22,14)"],
        ["(2,7,11,4)(3,6,15,10)(5,17,25,18)(8,9,24,23)(12,20,22,14)(13,19,21,16)",
         "(2,11)(3,15)(4,7)(5,25)(6,10)(8,24)(9,23)(12,22)(13,21)(14,20)(16,19)(17,18)",
         "(1,11,7,4,2)(3,16,12,8,5)(6,20,17,13,9)(10,23,21,18,14)(15,25,24,22,19)"],
        ["(2,11)(3,15)(4,7)(5,25)(6,10)(8,24)(9,23)(12,22)(13,21)(14,20)(16,19)(17,18)"],
    ),
}

KNOWN = tuple(_SPECS)


def _group(name: str) -> PermGroup:
    if name == "S3xS3":
        S3 = standard_group("symmetric", 3)
        return direct_product(S3, S3, name="S3xS3")
    if name == "D5xD5":
        D5 = standard_group("dihedral", 5)
        return direct_product(D5, D5, name="D5xD5")
    return load_group(name, name)


def known_packet(name: str) -> GroupPacket:
    """Build and validate one of the named packets in :data:`KNOWN`."""
    gname, *subs = _SPECS[name]
    G = _group(gname)

    def sub(cycles):
        return G.subgroup([Permutation.from_cycles(c, G.degree) for c in cycles])

    *hs, k = [sub(c) for c in subs]
    return validate_packet(G, hs, k)
