"""Orthogonal arrays, Latin squares and sets of mutually orthogonal Latin squares.

Squares are stored as tuples of rows over the symbols ``0..n-1``.  Most
functions also accept plain nested lists.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

from .errors import (
    ArrayError,
    CoordinateOutOfRange,
    EmptySet,
    GroupTooLarge,
    NotLatin,
    NotOrthogonal,
    ShapeError,
    SizeMismatch,
)
from .fields import field
from .packets import GroupPacket
from .perms import DEFAULT_GROUP_CAP, PermGroup, left_cosets


@dataclass(frozen=True)
class LatinSquare:
    cells: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], check: bool = True) -> LatinSquare:
        cells = tuple(tuple(int(x) for x in row) for row in rows)
        if check:
            check_latin(cells)
        return cls(cells)

    @property
    def n(self) -> int:
        return len(self.cells)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.cells[i]

    def __iter__(self):
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def transpose(self) -> LatinSquare:
        return LatinSquare(tuple(zip(*self.cells)))


Square = Union[LatinSquare, Sequence[Sequence[int]]]


def _cells(square: Square) -> tuple[tuple[int, ...], ...]:
    if isinstance(square, LatinSquare):
        return square.cells
    return tuple(tuple(row) for row in square)


@dataclass(frozen=True)
class MolsSet:
    squares: tuple[LatinSquare, ...]

    @classmethod
    def checked(cls, squares: Sequence[Square]) -> MolsSet:
        """Build a set, raising :class:`NotOrthogonal` on the first bad pair."""
        sqs = tuple(s if isinstance(s, LatinSquare) else LatinSquare.from_rows(s) for s in squares)
        _check_family(sqs)
        return cls(sqs)

    @property
    def n(self) -> int:
        return self.squares[0].n if self.squares else 0

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)

    def __getitem__(self, i: int) -> LatinSquare:
        return self.squares[i]


@dataclass(frozen=True)
class OrthogonalArray:
    """Rows of an index-1 strength-2 array: any two coordinates determine the row."""

    n: int
    rows: tuple[tuple[int, ...], ...]
    coordinate_labels: tuple[tuple, ...] | None = None

    @property
    def q_plus_2(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def width(self) -> int:
        return self.q_plus_2


def check_array(array: OrthogonalArray) -> None:
    """Raise :class:`ArrayError` unless every coordinate pair is a bijection onto ``n x n``."""
    n = array.n
    if len(array.rows) != n * n:
        raise ArrayError(f"{len(array.rows)} rows, expected {n * n}")
    width = array.q_plus_2
    for row in array.rows:
        if len(row) != width or any(not 0 <= x < n for x in row):
            raise ArrayError(f"bad row {row}")
    for i, j in combinations(range(width), 2):
        if len({(r[i], r[j]) for r in array.rows}) != n * n:
            raise ArrayError(f"coordinates {i} and {j} repeat a pair")


def is_orthogonal_array(array: OrthogonalArray) -> bool:
    try:
        check_array(array)
    except ArrayError:
        return False
    return True


def packet_to_array(packet: GroupPacket, orderings: Sequence[Sequence[int]] | None = None
                    ) -> OrthogonalArray:
    """Rows are the cosets ``gK``; entry ``i`` is the number of ``gH_i`` in ``G/H_i``.

    Cosets are numbered by increasing minimal element.  ``orderings[i]``, if
    given, renumbers the cosets of ``H_i`` (coset ``c`` becomes ``orderings[i][c]``).
    """
    G = packet.group
    spaces = [left_cosets(G, H) for H in packet.subgroups]
    if orderings is None:
        orderings = [range(s.index) for s in spaces]
    rows_space = left_cosets(G, packet.core_subgroup)
    rows = []
    for coset in rows_space.cosets:
        g = coset[0]
        rows.append(tuple(order[s.coset_of[g]] for s, order in zip(spaces, orderings)))
    labels = tuple(tuple(c[0] for c in s.cosets) for s in spaces)
    return OrthogonalArray(packet.n, tuple(rows), labels)


def array_to_squares(array: OrthogonalArray, row_coord: int = 0, col_coord: int = 1) -> MolsSet:
    """One square per remaining coordinate: cell ``(i, j)`` is read off the row with those two entries."""
    width = array.q_plus_2
    for c in (row_coord, col_coord):
        if not 0 <= c < width:
            raise CoordinateOutOfRange(f"coordinate {c} outside 0..{width - 1}")
    if row_coord == col_coord:
        raise CoordinateOutOfRange("row and column coordinates must differ")
    n = array.n
    others = [c for c in range(width) if c not in (row_coord, col_coord)]
    grids = [[[None] * n for _ in range(n)] for _ in others]
    for row in array.rows:
        for grid, c in zip(grids, others):
            grid[row[row_coord]][row[col_coord]] = row[c]
    return MolsSet(tuple(LatinSquare(tuple(tuple(r) for r in g)) for g in grids))


def mols_to_array(squares: Sequence[Square] | MolsSet) -> OrthogonalArray:
    """Rows ``(i, j, L_1[i][j], ..., L_q[i][j])``."""
    sqs = [_cells(s) for s in squares]
    if not sqs:
        raise EmptySet("no squares given")
    n = len(sqs[0])
    rows = tuple((i, j) + tuple(s[i][j] for s in sqs) for i in range(n) for j in range(n))
    return OrthogonalArray(n, rows)


def square_to_array(square: Square) -> OrthogonalArray:
    return mols_to_array([square])


def _shape(cells) -> int:
    n = len(cells)
    if n == 0 or any(len(row) != n for row in cells):
        raise ShapeError("square must be n x n with n >= 1")
    return n


def check_latin(square: Square) -> None:
    """Raise :class:`NotLatin` naming the first bad row or column."""
    cells = _cells(square)
    n = _shape(cells)
    full = set(range(n))
    for i, row in enumerate(cells):
        if set(row) != full:
            raise NotLatin("row", i)
    for j in range(n):
        if {cells[i][j] for i in range(n)} != full:
            raise NotLatin("column", j)


def is_latin(square: Square) -> bool:
    try:
        check_latin(square)
    except NotLatin:
        return False
    return True


def _first_collision(a, b):
    n = len(a)
    seen = {}
    for i in range(n):
        for j in range(n):
            pair = (a[i][j], b[i][j])
            if pair in seen:
                return pair, (seen[pair], (i, j))
            seen[pair] = (i, j)
    return None


def are_orthogonal(A: Square, B: Square) -> bool:
    a, b = _cells(A), _cells(B)
    if len(a) != len(b):
        raise SizeMismatch(f"orders {len(a)} and {len(b)} differ")
    return _first_collision(a, b) is None


def _check_family(squares: Sequence[Square]) -> None:
    cells = [_cells(s) for s in squares]
    for i, j in combinations(range(len(cells)), 2):
        if len(cells[i]) != len(cells[j]):
            raise SizeMismatch(f"squares {i} and {j} have different orders")
        hit = _first_collision(cells[i], cells[j])
        if hit is not None:
            raise NotOrthogonal(i, j, hit[0], hit[1])


def orthogonality_matrix(squares: Sequence[Square]) -> list[list[bool]]:
    cells = [_cells(s) for s in squares]
    return [[i != j and are_orthogonal(a, b) for j, b in enumerate(cells)]
            for i, a in enumerate(cells)]


def normalize_square(square: Square) -> LatinSquare:
    """Relabel symbols so the first row reads ``0..n-1``, then sort rows by first entry."""
    cells = _cells(square)
    relabel = {s: j for j, s in enumerate(cells[0])}
    rows = [tuple(relabel[x] for x in row) for row in cells]
    rows.sort(key=lambda r: r[0])
    return LatinSquare(tuple(rows))


def normalize_mols(squares: Sequence[Square]) -> MolsSet:
    """Relabel each square's symbols by its first row, then sort rows by the first square.

    Symbol relabelings per square and a common row permutation keep the
    family orthogonal; the first square comes out reduced.
    """
    relabelled = []
    for square in squares:
        cells = _cells(square)
        relabel = {s: j for j, s in enumerate(cells[0])}
        relabelled.append([tuple(relabel[x] for x in row) for row in cells])
    if not relabelled:
        raise EmptySet("no squares given")
    order = sorted(range(len(relabelled[0])), key=lambda i: relabelled[0][i][0])
    return MolsSet(tuple(LatinSquare(tuple(rows[i] for i in order)) for rows in relabelled))


def is_reduced(square: Square) -> bool:
    cells = _cells(square)
    n = len(cells)
    return list(cells[0]) == list(range(n)) and [r[0] for r in cells] == list(range(n))


def is_associative(square: Square) -> bool:
    """Whether ``a * b = L[a][b]`` is associative (index 0 should be the identity)."""
    L = _cells(square)
    n = len(L)
    for a in range(n):
        La = L[a]
        for b in range(n):
            Lab = L[La[b]]
            Lb = L[b]
            for c in range(n):
                if Lab[c] != La[Lb[c]]:
                    return False
    return True


def quadrangle_criterion(square: Square) -> bool:
    """Whether the square is isotopic to a group table.

    For rows ``r, s`` let ``tau_rs`` be the column map with
    ``L[s][tau_rs(j)] == L[r][j]``.  The quadrangle criterion says exactly
    that two such maps agreeing at one column are equal.
    """
    L = _cells(square)
    n = len(L)
    pos = [[0] * n for _ in range(n)]
    for i, row in enumerate(L):
        for j, x in enumerate(row):
            pos[i][x] = j
    # by_start[j][t] is the map sending column j to column t, once seen
    by_start = [[None] * n for _ in range(n)]
    for r in range(n):
        Lr = L[r]
        for s in range(n):
            ps = pos[s]
            tau = tuple(ps[x] for x in Lr)
            for j, t in enumerate(tau):
                known = by_start[j][t]
                if known is None:
                    by_start[j][t] = tau
                elif known != tau:
                    return False
    return True


def cayley_square(G: PermGroup, cap: int = DEFAULT_GROUP_CAP) -> LatinSquare:
    """``L[x][y] = xy`` over the group's element order."""
    if G.order > cap:
        raise GroupTooLarge(f"|G| = {G.order} exceeds the cap {cap}")
    return LatinSquare(tuple(tuple(row) for row in G.table))


@dataclass(frozen=True)
class OrthomorphismFamily:
    """Bijections ``mu_i`` of a group, as lists of element indices (``mu[g]`` is the image of ``g``)."""

    group: PermGroup
    maps: tuple[tuple[int, ...], ...]


def normalized_maps(family: OrthomorphismFamily) -> list[tuple[int, ...]]:
    """``mu(g) * mu(e)^-1`` for each map, so that ``e`` is fixed."""
    G = family.group
    t = G.table
    inv = G.inverses
    out = []
    for mu in family.maps:
        if sorted(mu) != list(range(G.order)):
            raise ValueError("orthomorphism maps must be bijections on the group")
        shift = inv[mu[0]]
        out.append(tuple(t[m][shift] for m in mu))
    return out


def orthomorphism_mols(family: OrthomorphismFamily) -> MolsSet:
    """The Cayley square ``xy`` followed by ``x * mu_i(y)`` for each map.

    Raises :class:`NotOrthogonal` with indices into that list when two of
    the squares are not orthogonal.
    """
    G = family.group
    t = G.table
    m = G.order
    squares = [LatinSquare(tuple(tuple(row) for row in t))]
    for mu in normalized_maps(family):
        squares.append(LatinSquare(tuple(tuple(t[x][mu[y]] for y in range(m)) for x in range(m))))
    _check_family(squares)
    return MolsSet(tuple(squares))


def field_mols(q: int) -> MolsSet:
    """The ``q - 1`` squares ``L_m[x][y] = m x + y`` over ``GF(q)``, ``m = 1..q-1``."""
    F = field(q)
    return MolsSet(tuple(
        LatinSquare(tuple(tuple(F.add(F.mul(m, x), y) for y in range(q)) for x in range(q)))
        for m in range(1, q)))


def find_transversal(square: Square) -> list[int] | None:
    """Columns ``c[r]`` so that the cells ``(r, c[r])`` have distinct columns and symbols."""
    L = _cells(square)
    n = len(L)
    chosen = [0] * n

    def search(r, used_cols, used_syms):
        if r == n:
            return True
        row = L[r]
        for c in range(n):
            if used_cols >> c & 1 or used_syms >> row[c] & 1:
                continue
            chosen[r] = c
            if search(r + 1, used_cols | 1 << c, used_syms | 1 << row[c]):
                return True
        return False

    return list(chosen) if search(0, 0, 0) else None


def find_complete_mapping(G: PermGroup) -> list[int] | None:
    """A bijection ``theta`` (element indices) with ``g -> g * theta(g)`` also bijective."""
    return find_transversal(cayley_square(G))


def mols_kronecker_product(s1: MolsSet | Sequence[Square], s2: MolsSet | Sequence[Square]) -> MolsSet:
    """Cellwise pairing; symbol ``(a, b)`` becomes ``a * n2 + b``.

    Sets of different sizes are truncated to the shorter one with a warning.
    """
    a = [_cells(s) for s in s1]
    b = [_cells(s) for s in s2]
    if not a or not b:
        raise EmptySet("both sets need at least one square")
    if len(a) != len(b):
        warnings.warn(f"truncating to {min(len(a), len(b))} squares", stacklevel=2)
    n1, n2 = len(a[0]), len(b[0])
    out = []
    for A, B in zip(a, b):
        out.append(LatinSquare(tuple(
            tuple(A[i1][j1] * n2 + B[i2][j2] for j1 in range(n1) for j2 in range(n2))
            for i1 in range(n1) for i2 in range(n2))))
    return MolsSet(tuple(out))
