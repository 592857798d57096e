"""Exhaustive enumeration of small Latin squares, main-class tallies and bound audits."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import islice
from pathlib import Path
from typing import Callable, Iterator, Sequence

from .classify import TransitivityClass, classify_square, main_class_certificate
from .errors import BoundViolation, CatalogOrderMismatch, OrderTooLarge, OutOfRange
from .mols import LatinSquare
from .packets import intersection_graph, maximum_cliques
from .perms import DEFAULT_GROUP_CAP, PermGroup, subgroups_of_order

MAX_ORDER = 7
LONG_RUNNING_ORDER = 7
CHECKPOINT_FORMAT = "transmols.table1-checkpoint"
CHECKPOINT_VERSION = 1


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def macneish_f(n: int) -> int:
    """Smallest prime-power factor of ``n``, minus one."""
    if n < 2:
        raise OutOfRange(f"n must be at least 2, got {n}")
    return min(p ** e for p, e in factorize(n).items()) - 1


def all_reduced_squares(n: int) -> Iterator[LatinSquare]:
    """Every Latin square of order ``n`` with first row and column ``0..n-1``, once each."""
    if n < 1:
        raise OutOfRange(f"n must be positive, got {n}")
    if n > MAX_ORDER:
        raise OrderTooLarge(f"enumeration is limited to n <= {MAX_ORDER}")
    full = (1 << n) - 1
    grid = [[0] * n for _ in range(n)]
    for j in range(n):
        grid[0][j] = j
    for i in range(n):
        grid[i][0] = i
    row_used = [1 << i for i in range(n)]
    col_used = [1 << j for j in range(n)]
    for j in range(1, n):
        col_used[j] |= 1 << j
    row_used[0] = full
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    last = len(cells)

    def fill(k):
        if k == last:
            yield LatinSquare(tuple(tuple(r) for r in grid))
            return
        i, j = cells[k]
        free = full & ~(row_used[i] | col_used[j])
        while free:
            bit = free & -free
            free ^= bit
            grid[i][j] = bit.bit_length() - 1
            row_used[i] |= bit
            col_used[j] |= bit
            yield from fill(k + 1)
            row_used[i] ^= bit
            col_used[j] ^= bit

    yield from fill(0)


@dataclass(frozen=True)
class Table1Row:
    order: int
    main_classes: int
    group_based: int
    simply_transitive_not_group: int
    transitive_not_simply: int
    non_transitive: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.main_classes, self.group_based, self.simply_transitive_not_group,
                self.transitive_not_simply, self.non_transitive)


def _certificate_hex(square: LatinSquare) -> str:
    return main_class_certificate(square).hex()


def _certificates(squares: Sequence[LatinSquare], workers: int) -> list[str]:
    if workers <= 1 or len(squares) < 64:
        return [_certificate_hex(s) for s in squares]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_certificate_hex, squares, chunksize=64))


def _write_checkpoint(path: Path, n: int, processed: int, classes: dict[str, LatinSquare]) -> None:
    state = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "n": n,
        "processed": processed,
        "classes": {cert: [list(r) for r in sq.cells] for cert, sq in classes.items()},
    }
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(state, sort_keys=True))
    os.replace(tmp, path)


def _read_checkpoint(path: Path, n: int) -> tuple[int, dict[str, LatinSquare]]:
    state = json.loads(path.read_text())
    if state.get("format") != CHECKPOINT_FORMAT or state.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"{path} is not a version {CHECKPOINT_VERSION} table checkpoint")
    if state["n"] != n:
        raise ValueError(f"{path} holds order {state['n']}, not {n}")
    classes = {cert: LatinSquare(tuple(tuple(r) for r in rows))
               for cert, rows in state["classes"].items()}
    return state["processed"], classes


def main_class_representatives(n: int, long_running: bool = False, workers: int = 1,
                               checkpoint: str | Path | None = None, batch: int = 4096,
                               progress: Callable[[int, int], None] | None = None
                               ) -> dict[str, LatinSquare]:
    """Map from paratopy certificate (hex) to the first reduced square with it."""
    if n >= LONG_RUNNING_ORDER and not long_running:
        raise OrderTooLarge(f"order {n} needs the long-running flag")
    path = Path(checkpoint) if checkpoint else None
    processed = 0
    classes: dict[str, LatinSquare] = {}
    if path is not None and path.exists():
        processed, classes = _read_checkpoint(path, n)
    stream = islice(all_reduced_squares(n), processed, None)
    while True:
        chunk = list(islice(stream, batch))
        if not chunk:
            break
        for cert, square in zip(_certificates(chunk, workers), chunk):
            classes.setdefault(cert, square)
        processed += len(chunk)
        if path is not None:
            _write_checkpoint(path, n, processed, classes)
        if progress is not None:
            progress(processed, len(classes))
    return classes


def table1_report(n: int, long_running: bool = False, workers: int = 1,
                  checkpoint: str | Path | None = None,
                  progress: Callable[[int, int], None] | None = None) -> Table1Row:
    """Main classes of order ``n`` and how many fall in each transitivity class."""
    classes = main_class_representatives(n, long_running, workers, checkpoint, progress=progress)
    tally = {c: 0 for c in TransitivityClass}
    for square in classes.values():
        tally[classify_square(square)] += 1
    return Table1Row(n, len(classes), tally[TransitivityClass.GROUP_BASED],
                     tally[TransitivityClass.SIMPLY_TRANSITIVE_NOT_GROUP],
                     tally[TransitivityClass.TRANSITIVE_NOT_SIMPLY],
                     tally[TransitivityClass.NON_TRANSITIVE])


@dataclass
class BoundReport:
    n: int
    f_n: int
    k: int
    groups_scanned: int
    max_clique_found: int
    violations: list = field(default_factory=list)
    per_group: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def bound_audit(n: int, k: int, catalog: Sequence[PermGroup],
                cap: int = DEFAULT_GROUP_CAP) -> BoundReport:
    """Largest packet clique over every group and every ``K`` of order ``k``.

    With ``k = 1`` a clique with more than ``f(n) + 2`` subgroups would be a
    simply transitive set beating the MacNeish bound; the audit stops with
    :class:`BoundViolation` carrying the witness if it ever finds one.
    """
    f_n = macneish_f(n)
    for G in catalog:
        if G.order != k * n * n:
            raise CatalogOrderMismatch(f"{G.name} has order {G.order}, expected {k * n * n}")
    report = BoundReport(n, f_n, k, 0, 0)
    for G in catalog:
        best = 0
        cores = subgroups_of_order(G, k, cap=cap)
        for K in cores:
            graph = intersection_graph(G, K, n, cap=cap)
            cliques = maximum_cliques(graph.neighbours)
            size = len(cliques[0]) if cliques else 0
            best = max(best, size)
            if k == 1 and size > f_n + 2:
                witness = {
                    "group": G.name,
                    "n": n,
                    "k": k,
                    "clique_size": size,
                    "subgroups": [[g.cycle_string() for g in graph.vertices[i].generators]
                                  for i in cliques[0]],
                }
                report.violations.append(witness)
                raise BoundViolation(witness)
        report.groups_scanned += 1
        report.max_clique_found = max(report.max_clique_found, best)
        report.per_group.append({"group": G.name, "cores": len(cores), "max_clique": best})
    return report


EXPECTED_EXAMPLES = {
    "s3xs3": TransitivityClass.SIMPLY_TRANSITIVE_NOT_GROUP,
    "order9_transitive": TransitivityClass.TRANSITIVE_NOT_SIMPLY,
    "d5xd5_M": TransitivityClass.SIMPLY_TRANSITIVE_NOT_GROUP,
    "order10_transitive": TransitivityClass.TRANSITIVE_NOT_SIMPLY,
}


def verify_example_squares() -> dict:
    """Check the bundled example squares: Latin, expected class, distinct order-10 main classes."""
    from .io import load_fixture
    from .mols import is_latin

    results = {}
    certs = {}
    for name, expected in EXPECTED_EXAMPLES.items():
        square = load_fixture(name)
        cls = classify_square(square)
        certs[name] = main_class_certificate(square)
        results[name] = {
            "latin": is_latin(square),
            "class": cls.value,
            "expected": expected.value,
            "ok": cls == expected,
        }
    distinct = certs["d5xd5_M"] != certs["order10_transitive"]
    return {
        "squares": results,
        "order10_main_classes_differ": distinct,
        "ok": distinct and all(r["ok"] and r["latin"] for r in results.values()),
    }
