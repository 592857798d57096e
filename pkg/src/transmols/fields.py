"""Finite fields GF(q) for q prime or a bundled prime power.

Elements are the integers ``0..q-1``; for ``q = p^e`` the base-``p`` digits
of an element are its polynomial coefficients, lowest degree first.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import UnsupportedOrder

# coefficients lowest degree first, monic
IRREDUCIBLE = {
    4: (1, 1, 1),        # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),     # x^3 + x + 1 over GF(2)
    9: (2, 1, 1),        # x^2 + x + 2 over GF(3)
    16: (1, 1, 0, 0, 1), # x^4 + x + 1 over GF(2)
    25: (2, 0, 1),       # x^2 + 2 over GF(5)
    27: (1, 2, 0, 1),    # x^3 + 2x + 1 over GF(3)
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _poly_mod(a: list[int], b: tuple[int, ...], p: int) -> list[int]:
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, coef in enumerate(b):
            a[shift + i] = (a[shift + i] - c * coef) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """No monic factor of degree ``1..deg/2`` divides the polynomial."""
    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(list(coeffs), tuple(low) + (1,), p):
                return False
    return True


class GF:
    """Arithmetic in a finite field with precomputed tables."""

    def __init__(self, q: int):
        if is_prime(q):
            self.p, self.degree, modulus = q, 1, None
        elif q in IRREDUCIBLE:
            modulus = IRREDUCIBLE[q]
            self.degree = len(modulus) - 1
            self.p = round(q ** (1 / self.degree))
            if self.p ** self.degree != q or not is_irreducible(modulus, self.p):
                raise UnsupportedOrder(f"bundled modulus for {q} is not irreducible")
        else:
            raise UnsupportedOrder(f"no field arithmetic for order {q}")
        self.q = q
        self.modulus = modulus
        digits = [self._digits(a) for a in range(q)]
        self._add = [[self._number([(x + y) % self.p for x, y in zip(da, db)]) for db in digits]
                     for da in digits]
        self._mul = [[self._number(self._poly_mul(da, db)) for db in digits] for da in digits]
        self._inv = [None] + [self._mul[a].index(1) for a in range(1, q)]

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            out.append(a % self.p)
            a //= self.p
        return out

    def _number(self, digits: list[int]) -> int:
        return sum(d * self.p ** i for i, d in enumerate(digits))

    def _poly_mul(self, a: list[int], b: list[int]) -> list[int]:
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        if self.modulus is not None:
            prod = _poly_mod(prod, self.modulus, self.p)
        prod = prod[: self.degree] + [0] * (self.degree - len(prod))
        return prod

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._add[a].index(0)

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def basis_element(self, i: int) -> int:
        """The element ``x^i`` of the polynomial basis."""
        return self.p ** i

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
