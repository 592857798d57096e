"""Command-line front end.

Exit status: 0 on success, 1 when a check fails (wrong declared order,
non-orthogonal squares, bound violation), 2 on unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .catalog import BUNDLED, load_catalog, parse_catalog, read_catalog_text
from .classify import autotopy_group, classify_array, classify_square_report
from .errors import (
    BoundViolation,
    CatalogOrderMismatch,
    NotLatin,
    OrderMismatch,
    PacketError,
    TransmolsError,
    UnknownPacketReference,
)
from .enumeration import bound_audit, macneish_f, table1_report
from .io import format_squares, read_squares
from .known_packets import KNOWN, known_packet
from .mols import (
    array_to_squares,
    check_latin,
    is_associative,
    mols_to_array,
    normalize_mols,
    normalize_square,
    orthogonality_matrix,
    packet_to_array,
)
from .packets import (
    GroupPacket,
    find_packets,
    intersection_graph,
    subgroup_hash,
    validate_packet,
)
from .perms import PermGroup, intersect_subgroups, subgroups_of_order

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _schema(command: str) -> str:
    return f"transmols.{command}/1"


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out and not getattr(args, "out_is_data", False):
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _at_least_two(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"expected an integer >= 2, got {text}")
    return value


# catalog-verify

def cmd_catalog_verify(args) -> int:
    sources = [args.catalog] if args.catalog else list(BUNDLED)
    results = []
    for source in sources:
        for record in parse_catalog(read_catalog_text(source)):
            entry = {"catalog": str(source), "group": record.name, "line": record.line,
                     "declared_order": record.declared_order}
            try:
                G = record.build()
            except OrderMismatch as exc:
                entry.update(ok=False, order=exc.actual, error=str(exc))
            else:
                entry.update(ok=True, order=G.order, error=None)
            results.append(entry)
    failed = [r for r in results if not r["ok"]]
    payload = {"schema": _schema("catalog-verify"), "records": results,
               "checked": len(results), "failed": len(failed)}
    lines = []
    for r in results:
        status = "ok" if r["ok"] else "FAIL"
        lines.append(f"{status:4} {r['catalog']}:{r['group']} order {r['order']}"
                     + ("" if r["ok"] else f" (declared {r['declared_order']})"))
    lines.append(f"{len(results)} records, {len(failed)} failed")
    _emit(args, payload, lines)
    return EXIT_FAILED if failed else EXIT_OK


# packets

def _load_sized_catalog(source: str, order: int) -> list[PermGroup]:
    groups = load_catalog(source)
    for G in groups:
        if G.order != order:
            raise CatalogOrderMismatch(f"{G.name} has order {G.order}, expected {order}")
    return groups


def _packets_for_group(G: PermGroup, n: int, k: int, max_cliques: bool) -> dict:
    cores = []
    for K in subgroups_of_order(G, k):
        graph = intersection_graph(G, K, n)
        packets = find_packets(graph, "max" if max_cliques else 3)
        cores.append({
            "core": [g.cycle_string() for g in K.generators],
            "core_hash": subgroup_hash(K),
            "vertices": len(graph.vertices),
            "edges": len(graph.edges),
            "packets": [p.report() for p in packets],
        })
    return {"group": G.name, "order": G.order, "cores": cores,
            "packet_count": sum(len(c["packets"]) for c in cores)}


def _packets_worker(task: tuple) -> dict:
    source, index, n, k, max_cliques = task
    G = load_catalog(source)[index]
    return _packets_for_group(G, n, k, max_cliques)


def cmd_packets(args) -> int:
    n, k = args.n, args.k
    groups = _load_sized_catalog(args.catalog, k * n * n)
    if args.workers > 1 and len(groups) > 1:
        tasks = [(args.catalog, i, n, k, args.max_cliques) for i in range(len(groups))]
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            per_group = list(pool.map(_packets_worker, tasks))
    else:
        per_group = [_packets_for_group(G, n, k, args.max_cliques) for G in groups]
    total = sum(g["packet_count"] for g in per_group)
    payload = {"schema": _schema("packets"), "n": n, "k": k, "catalog": str(args.catalog),
               "max_cliques": args.max_cliques, "groups": per_group,
               "groups_scanned": len(per_group),
               "groups_with_packets": sum(1 for g in per_group if g["packet_count"]),
               "packet_count": total}
    lines = []
    for g in per_group:
        lines.append(f"group {g['group']} (order {g['order']}): {g['packet_count']} packets")
        for c in g["cores"]:
            core = " ".join(c["core"]) or "<e>"
            lines.append(f"  K = {core}: {c['vertices']} subgroups, {c['edges']} edges, "
                         f"{len(c['packets'])} packets")
            for p in c["packets"]:
                lines.append(f"    {p['id']}  size {p['clique_size']}"
                             f"  {'disjoint' if p['disjoint'] else 'non-disjoint'}")
    lines.append(f"{len(per_group)} groups scanned, {total} packets")
    _emit(args, payload, lines)
    return EXIT_OK


# build

def _candidate_groups(name: str, catalog: str | None) -> list[PermGroup]:
    sources = [catalog] if catalog else list(BUNDLED)
    out = []
    for source in sources:
        for record in parse_catalog(read_catalog_text(source)):
            if record.name == name:
                out.append(record.build())
    return out


def _packet_in_group(G: PermGroup, hashes: list[str]) -> GroupPacket | None:
    for n in range(2, G.order + 1):
        if n * n > G.order:
            break
        if G.order % (n * n):
            continue
        found = {subgroup_hash(H): H for H in subgroups_of_order(G, G.order // n)}
        if all(h in found for h in hashes):
            hs = [found[h] for h in hashes]
            K = intersect_subgroups(hs[0], hs[1])
            try:
                return validate_packet(G, hs, K)
            except PacketError:
                return None
    return None


def resolve_packet(reference: str, catalog: str | None = None) -> GroupPacket:
    """A packet from a name in :data:`KNOWN` or an identifier ``group@hash.hash...``."""
    if reference in KNOWN:
        return known_packet(reference)
    name, sep, rest = reference.rpartition("@")
    hashes = rest.split(".") if sep else []
    if not sep or not name or len(hashes) < 3:
        raise UnknownPacketReference(f"malformed packet reference {reference!r}")
    for G in _candidate_groups(name, catalog):
        packet = _packet_in_group(G, hashes)
        if packet is not None:
            return packet
    raise UnknownPacketReference(f"no packet {reference!r} in the catalogs searched")


def cmd_build(args) -> int:
    packet = resolve_packet(args.packet, args.catalog)
    squares = normalize_mols(array_to_squares(packet_to_array(packet)))
    verdicts = ["associative" if is_associative(normalize_square(s)) else "non-associative"
                for s in squares]
    result = classify_array(mols_to_array(squares))
    payload = {"schema": _schema("build"), "packet": packet.report(), "n": packet.n,
               "squares": [[list(r) for r in s.cells] for s in squares],
               "associativity": verdicts, "classification": result.report()}
    lines = [f"group {packet.group.name} (order {packet.group.order}), n = {packet.n}, "
             f"k = {packet.k}, {len(squares)} square(s)"]
    for i, H in enumerate(packet.subgroups, start=1):
        lines.append(f"  H_{i} = <{' '.join(g.cycle_string() for g in H.generators)}>")
    lines.append(f"  K = <{' '.join(g.cycle_string() for g in packet.core_subgroup.generators)}>")
    lines.append("verdict: " + ", ".join(verdicts))
    lines.append(f"class: {result.cls.value} (autotopy order {result.autotopy_order})")
    if args.out:
        Path(args.out).write_text(format_squares(squares))
        lines.append(f"wrote {len(squares)} square(s) to {args.out}")
    else:
        lines.append("")
        lines.append(format_squares(squares).rstrip("\n"))
    args.out_is_data = True
    _emit(args, payload, lines)
    return EXIT_OK


# classify, autotopy, check-mols

def cmd_classify(args) -> int:
    squares = read_squares(args.input)
    reports = [classify_square_report(s) for s in squares]
    payload = {"schema": _schema("classify"), "squares": [r.report() for r in reports]}
    lines = [f"square {i}: order {r.order}, {r.cls.value}, autotopy order {r.autotopy_order}, "
             f"certificate {r.certificate.hex()[:16]}" for i, r in enumerate(reports)]
    if len(squares) > 1:
        matrix = orthogonality_matrix(squares)
        payload["orthogonality"] = matrix
        mutually = all(matrix[i][j] for i in range(len(squares))
                       for j in range(len(squares)) if i != j)
        payload["mutually_orthogonal"] = mutually
        lines.append("mutually orthogonal" if mutually else "not mutually orthogonal")
        if mutually and len({s.n for s in squares}) == 1:
            whole = classify_array(mols_to_array(squares))
            payload["set"] = whole.report()
            lines.append(f"set: {whole.cls.value}, autotopy order {whole.autotopy_order}")
    _emit(args, payload, lines)
    return EXIT_OK


def _mols_family(args) -> list:
    squares = read_squares(args.input)
    if len({s.n for s in squares}) != 1:
        raise NotLatin("square", 0, "squares in one file must share an order")
    return squares


def cmd_autotopy(args) -> int:
    squares = _mols_family(args)
    matrix = orthogonality_matrix(squares)
    if not all(matrix[i][j] for i in range(len(squares)) for j in range(len(squares)) if i != j):
        print("error: squares are not mutually orthogonal", file=sys.stderr)
        return EXIT_FAILED
    A = autotopy_group(mols_to_array(squares))
    payload = {"schema": _schema("autotopy"), "n": A.n, "squares": len(squares),
               "order": A.order, "orbit_count": len(A.orbits),
               "generators": [g.cycle_string() for g in A.generators],
               "projections": [[p.cycle_string() for p in proj] for proj in A.projections]}
    lines = [f"autotopy order {A.order}, {len(A.orbits)} orbit(s) on {A.n * A.n} cells"]
    lines += [f"  {g.cycle_string()}" for g in A.generators]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_check_mols(args) -> int:
    squares = read_squares(args.input, check=False)
    latin = []
    for s in squares:
        try:
            check_latin(s)
            latin.append(None)
        except NotLatin as exc:
            latin.append(str(exc))
    same_order = len({s.n for s in squares}) == 1
    matrix = orthogonality_matrix(squares) if same_order and not any(latin) else None
    ok = matrix is not None and all(matrix[i][j] for i in range(len(squares))
                                    for j in range(len(squares)) if i != j)
    payload = {"schema": _schema("check-mols"), "squares": len(squares),
               "latin": [e is None for e in latin], "latin_errors": latin,
               "same_order": same_order, "orthogonality": matrix, "mols": ok}
    lines = [f"square {i}: " + ("latin" if e is None else f"not latin ({e})")
             for i, e in enumerate(latin)]
    if not same_order:
        lines.append("squares have different orders")
    lines.append(f"{len(squares)} square(s): " + ("MOLS" if ok else "not MOLS"))
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAILED


# table1, macneish, bound-audit

def cmd_table1(args) -> int:
    rows = []
    for n in args.n:
        checkpoint = args.checkpoint
        if checkpoint and len(args.n) > 1:
            checkpoint = f"{checkpoint}.n{n}"
        rows.append(table1_report(n, long_running=args.long_running, workers=args.workers,
                                  checkpoint=checkpoint))
    payload = {"schema": _schema("table1"),
               "rows": [{"order": r.order, "main_classes": r.main_classes,
                         "group_based": r.group_based,
                         "simply_transitive_not_group": r.simply_transitive_not_group,
                         "transitive_not_simply": r.transitive_not_simply,
                         "non_transitive": r.non_transitive} for r in rows]}
    lines = ["order  main  group  simply  transitive  non-transitive"]
    lines += [f"{r.order:5}  {r.main_classes:4}  {r.group_based:5}  "
              f"{r.simply_transitive_not_group:6}  {r.transitive_not_simply:10}  "
              f"{r.non_transitive:14}" for r in rows]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_macneish(args) -> int:
    values = list(args.values or []) + ([args.n] if args.n else [])
    if not values:
        print("error: give at least one n", file=sys.stderr)
        return EXIT_INPUT
    results = [{"n": n, "f": macneish_f(n)} for n in values]
    payload = {"schema": _schema("macneish"), "values": results}
    _emit(args, payload, [f"f({r['n']}) = {r['f']}" for r in results])
    return EXIT_OK


def _default_catalog(order: int) -> str:
    name = f"order{order}"
    if name not in BUNDLED:
        raise CatalogOrderMismatch(f"no bundled catalog of order {order}; pass --catalog")
    return name


def cmd_bound_audit(args) -> int:
    n, k = args.n, args.k
    source = args.catalog or _default_catalog(k * n * n)
    groups = _load_sized_catalog(source, k * n * n)
    try:
        report = bound_audit(n, k, groups)
    except BoundViolation as exc:
        payload = {"schema": _schema("bound-audit"), "n": n, "k": k, "violation": exc.witness}
        _emit(args, payload, [f"VIOLATION: {json.dumps(exc.witness, sort_keys=True)}"])
        return EXIT_FAILED
    payload = {"schema": _schema("bound-audit"), "catalog": str(source), **report.as_dict()}
    lines = [f"{g['group']}: {g['cores']} choices of K, max clique {g['max_clique']}"
             for g in report.per_group]
    lines.append(f"n = {n}, k = {k}, f(n) = {report.f_n}: {report.groups_scanned} groups, "
                 f"max clique {report.max_clique_found}, {len(report.violations)} violations")
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transmols", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--out", help="write the report (or squares, for build) to this file")
        return p

    p = command("catalog-verify", cmd_catalog_verify, "check declared group orders")
    p.add_argument("--catalog", help="catalog file or bundled name (default: all bundled)")

    p = command("packets", cmd_packets, "search packets in a catalog")
    p.add_argument("--n", type=_at_least_two, required=True)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--catalog", required=True)
    p.add_argument("--max-cliques", action="store_true", help="report maximum cliques")
    p.add_argument("--workers", type=_positive, default=1)

    p = command("build", cmd_build, "build squares from a packet reference")
    p.add_argument("--packet", required=True, help="identifier from 'packets' or a known name")
    p.add_argument("--catalog", help="restrict the group lookup to this catalog")

    for name, func, text in (("classify", cmd_classify, "classify squares in a file"),
                             ("autotopy", cmd_autotopy, "autotopy group of a MOLS file"),
                             ("check-mols", cmd_check_mols, "check Latin and orthogonal")):
        p = command(name, func, text)
        p.add_argument("--in", dest="input", required=True)

    p = command("table1", cmd_table1, "count main classes by transitivity")
    p.add_argument("--n", "--order", dest="n", type=_at_least_two, nargs="+", required=True)
    p.add_argument("--long-running", action="store_true")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--checkpoint", help="resume file for long runs")

    p = command("macneish", cmd_macneish, "smallest prime-power factor minus one")
    p.add_argument("values", nargs="*", type=_at_least_two)
    p.add_argument("--n", type=_at_least_two)

    p = command("bound-audit", cmd_bound_audit, "largest disjoint packet per catalog")
    p.add_argument("--n", type=_at_least_two, required=True)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--catalog", help="default: the bundled catalog of order k n^2")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TransmolsError, KeyError, ValueError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
