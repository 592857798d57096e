"""Group catalog files.

A catalog is a sequence of records::

    group <name>
    degree <d>
    gen <cycle notation, 1-based points>
    ...
    order <m>        (optional, checked against the closure)
    end

Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import OrderMismatch, ParseError
from .perms import Permutation, PermGroup, generate_group

BUNDLED = ("order4", "order9", "order25", "order36", "small", "order243_n9k3", "order200_n10k2")


@dataclass(frozen=True)
class CatalogRecord:
    name: str
    degree: int
    generators: tuple[Permutation, ...]
    declared_order: int | None
    line: int

    def build(self, max_order: int | None = None) -> PermGroup:
        """Close the generators; raise :class:`OrderMismatch` if the declared order is wrong."""
        G = generate_group(self.degree, self.generators, name=self.name, max_order=max_order)
        if self.declared_order is not None and G.order != self.declared_order:
            raise OrderMismatch(self.name, self.declared_order, G.order)
        return G


def parse_catalog(text: str) -> list[CatalogRecord]:
    records = []
    current: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "group":
            if current is not None:
                raise ParseError(lineno, f"record {current['name']!r} is missing 'end'")
            if not rest:
                raise ParseError(lineno, "group record needs a name")
            current = {"name": rest, "degree": None, "gens": [], "order": None, "line": lineno}
            continue
        if current is None:
            raise ParseError(lineno, f"{word!r} outside a group record")
        if word == "degree":
            current["degree"] = _positive_int(rest, lineno, "degree")
        elif word == "gen":
            if current["degree"] is None:
                raise ParseError(lineno, "'gen' before 'degree'")
            try:
                current["gens"].append(Permutation.from_cycles(rest, current["degree"]))
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif word == "order":
            current["order"] = _positive_int(rest, lineno, "order")
        elif word == "end":
            if current["degree"] is None:
                raise ParseError(lineno, f"record {current['name']!r} has no degree")
            if not current["gens"]:
                raise ParseError(lineno, f"record {current['name']!r} has no generators")
            records.append(CatalogRecord(current["name"], current["degree"],
                                         tuple(current["gens"]), current["order"],
                                         current["line"]))
            current = None
        else:
            raise ParseError(lineno, f"unknown keyword {word!r}")
    if current is not None:
        raise ParseError(len(text.splitlines()), f"record {current['name']!r} is missing 'end'")
    return records


def _positive_int(text: str, lineno: int, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {text!r}") from None
    if value < 1:
        raise ParseError(lineno, f"{what} must be positive")
    return value


def format_catalog(groups: list[PermGroup]) -> str:
    out = []
    for G in groups:
        out.append(f"group {G.name}")
        out.append(f"degree {G.degree}")
        for g in G.generators:
            out.append(f"gen {g.cycle_string()}")
        out.append(f"order {G.order}")
        out.append("end")
        out.append("")
    return "\n".join(out)


def read_catalog_text(source: str | Path) -> str:
    """Text of a catalog given a path or the name of a bundled catalog."""
    if isinstance(source, str) and source in BUNDLED:
        return resources.files("transmols").joinpath("data", f"{source}.cat").read_text()
    return Path(source).read_text()


def load_catalog(source: str | Path, max_order: int | None = None) -> list[PermGroup]:
    """Parse and close every record, verifying declared orders."""
    return [r.build(max_order) for r in parse_catalog(read_catalog_text(source))]


def load_group(catalog: str | Path, name: str) -> PermGroup:
    for r in parse_catalog(read_catalog_text(catalog)):
        if r.name == name:
            return r.build()
    raise KeyError(f"no group {name!r} in catalog {catalog}")
