"""Transitive Latin squares and MOLS from group packets."""

from __future__ import annotations

from .canon import Certificate, ColoredGraph, canonical_certificate, graph_automorphisms, mols_graph
from .catalog import load_catalog, load_group, parse_catalog
from .classify import (
    TransitivityClass,
    autotopy_group,
    classify_array,
    classify_square,
    find_regular_subgroup,
    is_simply_transitive,
    is_transitive,
    main_class_certificate,
)
from .enumeration import bound_audit, macneish_f, table1_report
from .errors import TransmolsError
from .known_packets import known_packet
from .mols import (
    LatinSquare,
    MolsSet,
    OrthogonalArray,
    array_to_squares,
    are_orthogonal,
    cayley_square,
    field_mols,
    is_latin,
    packet_to_array,
    quadrangle_criterion,
)
from .packets import (
    GroupPacket,
    cayley_packet,
    field_packet,
    find_packets,
    intersection_graph,
    product_packets,
    reduce_packet,
    validate_packet,
)
from .perms import Permutation, PermGroup, Subgroup, direct_product, generate_group, standard_group

__version__ = "0.1.0"
