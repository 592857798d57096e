"""Exception types raised across the package.

Every error derives from :class:`TransmolsError`; most also derive from
``ValueError`` so callers that only care about bad input can catch that.
"""

from __future__ import annotations


class TransmolsError(Exception):
    """Base class for all package errors."""


# permutations and groups

class EmptyGeneratorSet(TransmolsError, ValueError):
    pass


class DegreeMismatch(TransmolsError, ValueError):
    pass


class UnsupportedParameter(TransmolsError, ValueError):
    pass


class OrderDoesNotDivide(TransmolsError, ValueError):
    pass


class GroupTooLarge(TransmolsError, ValueError):
    pass


class ParentMismatch(TransmolsError, ValueError):
    pass


class NotASubgroup(TransmolsError, ValueError):
    pass


# packets

class SizeMismatch(TransmolsError, ValueError):
    pass


class SizeTooSmall(TransmolsError, ValueError):
    pass


class PacketError(TransmolsError, ValueError):
    """A candidate packet fails one of the packet conditions."""


class IndexViolation(PacketError):
    pass


class IntersectionViolation(PacketError):
    pass


class SizeViolation(PacketError):
    pass


class ArityMismatch(TransmolsError, ValueError):
    pass


# squares and arrays

class ShapeError(TransmolsError, ValueError):
    pass


class NotLatin(TransmolsError, ValueError):
    """Raised with a witness: ``kind`` is "row" or "column", ``index`` the line."""

    def __init__(self, kind: str, index: int, message: str | None = None):
        self.kind = kind
        self.index = index
        super().__init__(message or f"{kind} {index} repeats a symbol")


class NotOrthogonal(TransmolsError, ValueError):
    """Two squares of a family share an ordered symbol pair.

    ``first``/``second`` index the squares in the family, ``pair`` is the
    repeated symbol pair and ``cells`` the two cells where it occurs.
    """

    def __init__(self, first: int, second: int, pair=None, cells=None):
        self.first = first
        self.second = second
        self.pair = pair
        self.cells = cells
        msg = f"squares {first} and {second} are not orthogonal"
        if pair is not None:
            msg += f": pair {pair} appears at {cells[0]} and {cells[1]}"
        super().__init__(msg)


class CoordinateOutOfRange(TransmolsError, IndexError):
    pass


class ArrayError(TransmolsError, ValueError):
    """Rows do not form an index-1 strength-2 orthogonal array."""


class UnsupportedOrder(TransmolsError, ValueError):
    pass


class EmptySet(TransmolsError, ValueError):
    pass


# classification

class GroupTooLargeForRegularSearch(TransmolsError, ValueError):
    pass


class ShapeMismatch(TransmolsError, ValueError):
    pass


# enumeration and audits

class OutOfRange(TransmolsError, ValueError):
    pass


class OrderTooLarge(TransmolsError, ValueError):
    pass


class CatalogOrderMismatch(TransmolsError, ValueError):
    pass


class FixtureMissing(TransmolsError, FileNotFoundError):
    pass


class BoundViolation(TransmolsError):
    """A disjoint packet beat the MacNeish bound. Carries the full witness."""

    def __init__(self, witness: dict):
        self.witness = witness
        super().__init__(f"bound violation: {witness}")


# files and command line

class ParseError(TransmolsError, ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class OrderMismatch(TransmolsError, ValueError):
    def __init__(self, name: str, declared: int, actual: int):
        self.name = name
        self.declared = declared
        self.actual = actual
        super().__init__(f"group {name}: declared order {declared}, closure has {actual}")


class UnknownPacketReference(TransmolsError, KeyError):
    pass
