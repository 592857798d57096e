"""Coloured graphs of orthogonal arrays, canonical certificates and automorphism groups.

The search is individualization-refinement: the partition is refined to an
equitable one, then a vertex of the first largest non-singleton cell is
individualized, recursively.  Partitions are ordered lists of vertices
(``lab``) cut into cells; ``cell_of[v]`` is the start index of the cell
holding ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

MODES = ("paratopy", "isotopy", "autotopy")


@dataclass(frozen=True)
class ColoredGraph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    colors: tuple[int, ...]
    mode: str = "plain"

    @classmethod
    def from_edges(cls, vertex_count: int, edges, colors: Sequence[int] | None = None,
                   mode: str = "plain") -> ColoredGraph:
        nbrs = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            nbrs[u].add(v)
            nbrs[v].add(u)
        colors = tuple(colors) if colors is not None else (0,) * vertex_count
        if len(colors) != vertex_count:
            raise ValueError("one colour per vertex is required")
        return cls(vertex_count, tuple(tuple(sorted(s)) for s in nbrs), colors, mode)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u, a in enumerate(self.adjacency) for v in a if u < v}


def mols_graph(array, mode: str = "paratopy") -> ColoredGraph:
    """Tripartite graph of an orthogonal array with ``t`` coordinates and ``n`` symbols.

    Vertices: ``0..t-1`` for coordinates, ``t + i*n + s`` for symbol ``s`` of
    coordinate ``i``, ``t + t*n + r`` for row ``r``.  Coordinate vertices share
    one colour in paratopy mode and get distinct colours otherwise.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    rows = array.rows
    n = array.n
    t = len(rows[0])
    base2 = t
    base3 = t + t * n
    N = base3 + n * n
    nbrs: list[list[int]] = [[] for _ in range(N)]
    for i in range(t):
        for s in range(n):
            v = base2 + i * n + s
            nbrs[i].append(v)
            nbrs[v].append(i)
    for r, row in enumerate(rows):
        x = base3 + r
        for i, s in enumerate(row):
            v = base2 + i * n + s
            nbrs[x].append(v)
            nbrs[v].append(x)
    if mode == "paratopy":
        colors = [0] * t + [1] * (t * n) + [2] * (n * n)
    else:
        colors = list(range(t)) + [t] * (t * n) + [t + 1] * (n * n)
    return ColoredGraph(N, tuple(tuple(sorted(a)) for a in nbrs), tuple(colors), mode)


@dataclass(frozen=True)
class Certificate:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()


# partition refinement

def _walk_invariant(graph: ColoredGraph) -> list[tuple[int, ...]]:
    """Closed-walk counts of lengths 4, 6, 8 and 10 at each vertex."""
    N = graph.vertex_count
    if N == 0:
        return []
    A = np.zeros((N, N), dtype=np.int64)
    for u, a in enumerate(graph.adjacency):
        A[u, list(a)] = 1
    out = []
    power = A
    powers = [A]
    for _ in range(4):
        power = power @ A
        powers.append(power)
    max_deg = max((len(a) for a in graph.adjacency), default=0)
    # keep A^k entries (k <= 5) squared and summed within int64
    if max_deg ** 10 * N >= 2 ** 62:
        return [()] * N
    for k in (1, 2, 3, 4):
        P = powers[k]
        out.append((P * P).sum(axis=1))
    return [tuple(int(col[v]) for col in out) for v in range(N)]


class _Partition:
    __slots__ = ("lab", "cell_of", "cell_len", "ncells")

    def __init__(self, lab, cell_of, cell_len, ncells):
        self.lab = lab
        self.cell_of = cell_of
        self.cell_len = cell_len
        self.ncells = ncells

    def copy(self) -> _Partition:
        return _Partition(self.lab[:], self.cell_of[:], self.cell_len[:], self.ncells)

    def discrete(self) -> bool:
        return self.ncells == len(self.lab)

    def cells(self):
        i = 0
        lab, cl = self.lab, self.cell_len
        while i < len(lab):
            yield i, cl[i]
            i += cl[i]

    def target_cell(self) -> int:
        best, best_len = -1, 1
        for start, length in self.cells():
            if length > best_len:
                best, best_len = start, length
        return best


def _initial_partition(graph: ColoredGraph, use_invariant: bool = True):
    N = graph.vertex_count
    inv = _walk_invariant(graph) if use_invariant else [()] * N
    keys = [(graph.colors[v], inv[v]) for v in range(N)]
    lab = sorted(range(N), key=lambda v: keys[v])
    cell_of = [0] * N
    cell_len = [0] * N
    starts = []
    i = 0
    while i < N:
        j = i
        while j < N and keys[lab[j]] == keys[lab[i]]:
            j += 1
        for p in range(i, j):
            cell_of[lab[p]] = i
        cell_len[i] = j - i
        starts.append(i)
        i = j
    trace = tuple(cell_len[s] for s in starts)
    return _Partition(lab, cell_of, cell_len, len(starts)), starts, trace


def _refine(P: _Partition, adj, queue_starts, cnt, ref: tuple | None = None,
            exact: bool = False) -> tuple[tuple, int]:
    """Refine ``P`` in place to the coarsest equitable refinement.

    Returns ``(trace, status)``.  When ``ref`` is given the trace is compared
    with it as it grows: status ``1`` means larger, ``-1`` means smaller (or,
    with ``exact``, different) and refinement stops early; ``0`` means equal.
    """
    lab, cell_of, cell_len = P.lab, P.cell_of, P.cell_len
    N = len(lab)
    queued = bytearray(N)
    queue = deque(queue_starts)
    for s in queue_starts:
        queued[s] = 1
    trace: list[int] = []
    append = trace.append
    checked = 0
    status = 0
    comparing = ref is not None
    nref = len(ref) if comparing else 0
    ncells = P.ncells
    while queue and ncells < N:
        s = queue.popleft()
        queued[s] = 0
        touched = []
        for u in lab[s:s + cell_len[s]]:
            for w in adj[u]:
                if cnt[w] == 0:
                    touched.append(w)
                cnt[w] += 1
        for c in sorted({cell_of[w] for w in touched}):
            L = cell_len[c]
            if L == 1:
                continue
            members = lab[c:c + L]
            first = cnt[members[0]]
            for v in members:
                if cnt[v] != first:
                    break
            else:
                continue
            members.sort(key=cnt.__getitem__)
            lab[c:c + L] = members
            append(c)
            append(L)
            pieces = []
            start = c
            cur = cnt[members[0]]
            big_start, big_size = c, 0
            for idx in range(1, L + 1):
                if idx == L or cnt[members[idx]] != cur:
                    size = c + idx - start
                    pieces.append(start)
                    cell_len[start] = size
                    for q in range(start, start + size):
                        cell_of[lab[q]] = start
                    append(cur)
                    append(size)
                    if size > big_size:
                        big_start, big_size = start, size
                    if idx < L:
                        start = c + idx
                        cur = cnt[members[idx]]
            ncells += len(pieces) - 1
            if queued[c]:
                for start in pieces[1:]:
                    queue.append(start)
                    queued[start] = 1
            else:
                for start in pieces:
                    if start != big_start:
                        queue.append(start)
                        queued[start] = 1
            if comparing:
                while checked < len(trace):
                    if checked >= nref:
                        status = -1 if exact else 1
                        break
                    x, y = trace[checked], ref[checked]
                    if x != y:
                        status = -1 if exact or x < y else 1
                        break
                    checked += 1
                if status:
                    comparing = False
                    if status < 0:
                        for w in touched:
                            cnt[w] = 0
                        P.ncells = ncells
                        return tuple(trace), -1
            if ncells == N:
                break
        for w in touched:
            cnt[w] = 0
    P.ncells = ncells
    if comparing and len(trace) < nref:
        status = -1
    return tuple(trace), status


def _individualize(P: _Partition, v: int) -> int:
    lab, cell_of, cell_len = P.lab, P.cell_of, P.cell_len
    c = cell_of[v]
    L = cell_len[c]
    i = lab.index(v, c, c + L)
    lab[c], lab[i] = lab[i], lab[c]
    cell_len[c] = 1
    cell_len[c + 1] = L - 1
    for q in range(c + 1, c + L):
        cell_of[lab[q]] = c + 1
    P.ncells += 1
    return c


def _leaf_key(P: _Partition, adj) -> tuple:
    pos = [0] * len(P.lab)
    for i, v in enumerate(P.lab):
        pos[v] = i
    return tuple(tuple(sorted(pos[w] for w in adj[v])) for v in P.lab)


def _leaf_map(src: _Partition, dst: _Partition) -> tuple[int, ...]:
    """The vertex permutation sending ``src.lab[i]`` to ``dst.lab[i]``."""
    perm = [0] * len(src.lab)
    for a, b in zip(src.lab, dst.lab):
        perm[a] = b
    return tuple(perm)


def _orbits(gens, N: int) -> list[int]:
    """Union-find roots (smallest vertex of each orbit)."""
    parent = list(range(N))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x, y in enumerate(g):
            a, b = find(x), find(y)
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(x) for x in range(N)]


class _Search:
    """Canonical-form search: the leaf with the largest (traces, relabelled graph)."""

    def __init__(self, graph: ColoredGraph, use_invariant: bool = True):
        self.graph = graph
        self.adj = graph.adjacency
        self.N = graph.vertex_count
        self.cnt = [0] * self.N
        self.gens: list[tuple[int, ...]] = []
        self.best_traces: list[tuple] | None = None
        self.best_key = None
        self.best_leaf: _Partition | None = None
        self.leaves = 0
        P, starts, trace0 = _initial_partition(graph, use_invariant)
        self.root_trace = (trace0, _refine(P, self.adj, starts, self.cnt)[0])
        self.root = P

    def run(self):
        self._dfs(self.root, [], [self.root_trace], 0)
        return self.best_leaf

    def _dfs(self, P: _Partition, path, traces, state) -> int:
        """``state``: 0 means equal to the best path so far, 1 means better.

        Returns the level to jump back to (``len(path)`` means carry on).
        """
        level = len(path)
        if P.discrete():
            self.leaves += 1
            key = _leaf_key(P, self.adj)
            if self.best_leaf is None or state == 1 or key > self.best_key:
                self.best_leaf, self.best_key, self.best_traces = P, key, list(traces)
                self.best_path = list(path)
                return level
            if key == self.best_key:
                self.gens.append(_leaf_map(self.best_leaf, P))
                common = 0
                while common < level and path[common] == self.best_path[common]:
                    common += 1
                return common
            return level
        c = P.target_cell()
        cell = P.lab[c:c + P.cell_len[c]]
        done: list[int] = []
        seen_gens = -1
        roots = None
        for v in sorted(cell):
            if done:
                if seen_gens != len(self.gens):
                    fixing = [g for g in self.gens if all(g[x] == x for x in path)]
                    roots = _orbits(fixing, self.N) if fixing else None
                    seen_gens = len(self.gens)
                if roots is not None and any(roots[v] == roots[u] for u in done):
                    continue
            child = P.copy()
            start = _individualize(child, v)
            child_state = state
            if state == 0 and self.best_traces is not None:
                if level + 1 < len(self.best_traces):
                    trace, status = _refine(child, self.adj, [start], self.cnt,
                                            self.best_traces[level + 1])
                    if status < 0:
                        done.append(v)
                        continue
                    if status > 0:
                        child_state = 1
                else:
                    trace = _refine(child, self.adj, [start], self.cnt)[0]
                    child_state = 1
            else:
                trace = _refine(child, self.adj, [start], self.cnt)[0]
            jump = self._dfs(child, path + [v], traces + [trace], child_state)
            done.append(v)
            if jump < level:
                return jump
            # after a better leaf was found below, siblings compare against it
            state = 0
        return level


def canonical_labeling(graph: ColoredGraph) -> tuple[list[int], list[tuple[int, ...]]]:
    """``(lab, automorphisms)``: ``lab[i]`` is the vertex given canonical label ``i``."""
    if graph.vertex_count == 0:
        return [], []
    search = _Search(graph)
    leaf = search.run()
    return list(leaf.lab), list(search.gens)


def certificate_from_labeling(graph: ColoredGraph, lab: Sequence[int]) -> Certificate:
    N = graph.vertex_count
    pos = [0] * N
    for i, v in enumerate(lab):
        pos[v] = i
    head = N.to_bytes(4, "big") + b"".join(graph.colors[v].to_bytes(4, "big", signed=True)
                                          for v in lab)
    bits = 0
    for i, v in enumerate(lab):
        for w in graph.adjacency[v]:
            j = pos[w]
            if j > i:
                # upper-triangle index of (i, j)
                bits |= 1 << (i * N - i * (i + 1) // 2 + (j - i - 1))
    size = (N * (N - 1) // 2 + 7) // 8
    return Certificate(head + bits.to_bytes(size, "big"))


def canonical_certificate(graph: ColoredGraph) -> Certificate:
    """Byte string equal for two coloured graphs exactly when they are isomorphic."""
    lab, _ = canonical_labeling(graph)
    return certificate_from_labeling(graph, lab)


def is_automorphism(graph: ColoredGraph, perm: Sequence[int]) -> bool:
    if any(graph.colors[v] != graph.colors[perm[v]] for v in range(graph.vertex_count)):
        return False
    adj = graph.adjacency
    return all(tuple(sorted(perm[w] for w in adj[v])) == adj[perm[v]]
               for v in range(graph.vertex_count))


@dataclass(frozen=True)
class AutomorphismGroup:
    """Generators and exact order of a colour-preserving automorphism group."""

    degree: int
    generators: tuple[tuple[int, ...], ...]
    order: int
    base: tuple[int, ...]
    orbit_sizes: tuple[int, ...]


def graph_automorphisms(graph: ColoredGraph) -> AutomorphismGroup:
    """Exact automorphism group via a stabilizer chain along the first path.

    Walk to the first leaf, then for each level from the deepest up, test
    every vertex of that level's target cell not yet known to be in the
    orbit of the path vertex: its subtree holds a leaf equivalent to the
    first leaf exactly when some automorphism fixing the earlier path vertices
    maps the path vertex to it.  The order is the product of the orbit sizes.
    """
    N = graph.vertex_count
    if N == 0:
        return AutomorphismGroup(0, (), 1, (), ())
    adj = graph.adjacency
    cnt = [0] * N
    P, starts, _ = _initial_partition(graph)
    _refine(P, adj, starts, cnt)
    nodes = [P]
    path: list[int] = []
    traces: list[tuple] = []
    cells: list[list[int]] = []
    while not nodes[-1].discrete():
        cur = nodes[-1]
        c = cur.target_cell()
        cell = sorted(cur.lab[c:c + cur.cell_len[c]])
        cells.append(cell)
        v = cell[0]
        child = cur.copy()
        start = _individualize(child, v)
        traces.append(_refine(child, adj, [start], cnt)[0])
        path.append(v)
        nodes.append(child)
    first = nodes[-1]
    first_key = _leaf_key(first, adj)
    depth = len(path)

    def find_equivalent(node: _Partition, level: int):
        """A leaf below ``node`` (at ``level``) matching the first path, or None."""
        if node.discrete():
            if _leaf_key(node, adj) == first_key:
                return node
            return None
        c = node.target_cell()
        for w in sorted(node.lab[c:c + node.cell_len[c]]):
            child = node.copy()
            start = _individualize(child, w)
            if _refine(child, adj, [start], cnt, traces[level], exact=True)[1]:
                continue
            hit = find_equivalent(child, level + 1)
            if hit is not None:
                return hit
        return None

    gens: list[tuple[int, ...]] = []
    orbit_sizes = [1] * depth
    for level in range(depth - 1, -1, -1):
        v = path[level]
        parent = nodes[level]
        failed: list[int] = []
        roots = _orbits(gens, N)
        for w in cells[level]:
            if w == v:
                continue
            if roots[w] == roots[v] or any(roots[w] == roots[f] for f in failed):
                continue
            child = parent.copy()
            start = _individualize(child, w)
            if _refine(child, adj, [start], cnt, traces[level], exact=True)[1]:
                failed.append(w)
                continue
            hit = find_equivalent(child, level + 1)
            if hit is None:
                failed.append(w)
            else:
                gens.append(_leaf_map(first, hit))
                roots = _orbits(gens, N)
        roots = _orbits(gens, N)
        orbit_sizes[level] = sum(1 for x in cells[level] if roots[x] == roots[v])
    order = 1
    for s in orbit_sizes:
        order *= s
    return AutomorphismGroup(N, tuple(gens), order, tuple(path), tuple(orbit_sizes))
