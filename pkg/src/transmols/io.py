"""Square and MOLS files.

A square is written as a line holding ``n`` followed by ``n`` rows of
space-separated symbols.  A MOLS file holds several squares separated by a
single blank line.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import FixtureMissing, ParseError
from .mols import LatinSquare, Square, _cells, check_latin

FIXTURES = ("s3xs3", "order9_transitive", "d5xd5_M", "order10_transitive")


def format_square(square: Square) -> str:
    cells = _cells(square)
    lines = [str(len(cells))] + [" ".join(str(x) for x in row) for row in cells]
    return "\n".join(lines) + "\n"


def format_squares(squares: Iterable[Square]) -> str:
    return "\n".join(format_square(s) for s in squares)


def parse_squares(text: str, check: bool = True) -> list[LatinSquare]:
    """Parse one or more squares; raises :class:`ParseError` or, with ``check``, NotLatin."""
    lines = text.splitlines()
    squares = []
    i = 0
    while i < len(lines):
        if not lines[i].strip():
            i += 1
            continue
        try:
            n = int(lines[i].strip())
        except ValueError:
            raise ParseError(i + 1, f"expected the order, got {lines[i]!r}") from None
        if n < 1:
            raise ParseError(i + 1, "order must be positive")
        rows = []
        for r in range(n):
            lineno = i + 2 + r
            if lineno > len(lines):
                raise ParseError(lineno, f"square ends after {r} of {n} rows")
            parts = lines[lineno - 1].split()
            if len(parts) != n:
                raise ParseError(lineno, f"expected {n} entries, got {len(parts)}")
            try:
                row = [int(x) for x in parts]
            except ValueError:
                raise ParseError(lineno, "entries must be integers") from None
            if any(not 0 <= x < n for x in row):
                raise ParseError(lineno, f"entries must lie in 0..{n - 1}")
            rows.append(row)
        square = LatinSquare.from_rows(rows, check=False)
        if check:
            check_latin(square)
        squares.append(square)
        i += n + 1
    if not squares:
        raise ParseError(1, "no square found")
    return squares


def read_squares(path: str | Path, check: bool = True) -> list[LatinSquare]:
    return parse_squares(Path(path).read_text(), check=check)


def write_squares(path: str | Path, squares: Iterable[Square]) -> None:
    Path(path).write_text(format_squares(squares))


def load_fixture(name: str) -> LatinSquare:
    """One of the bundled example squares in :data:`FIXTURES`."""
    ref = resources.files("transmols").joinpath("data", "squares", f"{name}.txt")
    if not ref.is_file():
        raise FixtureMissing(f"no bundled square {name!r}")
    return parse_squares(ref.read_text())[0]
