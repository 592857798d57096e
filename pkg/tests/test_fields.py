from __future__ import annotations

import pytest

from transmols.errors import UnsupportedOrder
from transmols.fields import IRREDUCIBLE, GF, field, is_irreducible, is_prime

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27]


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    F = field(q)
    els = range(q)
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
    sample = list(els)[:6]
    for a in sample:
        for b in sample:
            for c in els:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_is_cyclic(q):
    F = field(q)
    best = 0
    for a in range(1, q):
        x, k = a, 1
        while x != 1:
            x, k = F.mul(x, a), k + 1
        best = max(best, k)
    assert best == q - 1


def test_irreducible_table():
    for q, coeffs in IRREDUCIBLE.items():
        p = min(d for d in range(2, q + 1) if q % d == 0)
        assert is_irreducible(coeffs, p)


def test_reducible_polynomial_detected():
    # x^2 + 1 = (x + 1)^2 over GF(2)
    assert not is_irreducible((1, 0, 1), 2)


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("q", [1, 6, 10, 12])
def test_unsupported_orders(q):
    with pytest.raises(UnsupportedOrder):
        GF(q)
