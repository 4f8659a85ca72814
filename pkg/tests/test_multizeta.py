"""Multizeta values and tuple metadata."""
import random

import pytest

from zetalike.algebra import LaurentSeries, Polynomial, RationalFunction, rational_to_series
from zetalike.carlitz import ell, power_sum
from zetalike.multizeta import (as_tuple, level_bound, primitive_reduce, tuple_predicates,
                                zeta_ratio, zeta_series, zeta_value)

from conftest import gf


def test_zeta_one_q2_first_terms():
    z = zeta_value(gf(2), (1,), 6)
    assert z.value.coefficient_list(0, 6) == [1, 0, 1, 1, 1, 1]
    assert not z.heuristic
    assert z.tail_bound_exponent == 6


def test_depth_one_is_a_unit():
    for q in (2, 3, 4):
        x = zeta_series(gf(q), (q + 1,), 30)
        assert x.valuation == 0 and x.leading == 1


def test_depth_two_starts_at_first_level():
    # the d = (1, 0) term is S_1(s_1), of valuation q * s_1 at most
    for q in (2, 3):
        f = gf(q)
        for tup in [(1, 1), (1, 2), (2, 3)]:
            x = zeta_series(f, tup, 40)
            assert x.valuation == power_sum(f, 1, tup[0], 40).valuation


def test_zeta_two_is_square_of_zeta_one_q2():
    f = gf(2)
    assert zeta_series(f, (2,), 50).agrees_with(zeta_series(f, (1,), 50) ** 2)


@pytest.mark.parametrize("q", (2, 3))
def test_primitivity_power(q):
    f = gf(q)
    rng = random.Random(7 * q)
    for _ in range(6):
        tup = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
        lhs = zeta_series(f, tuple(q * s for s in tup), 40)
        rhs = zeta_series(f, tup, 40) ** q
        assert lhs.agrees_with(rhs, 40)


@pytest.mark.parametrize("q", (2, 3, 4))
def test_small_exponent_zeta_is_sum_of_ell_powers(q):
    f = gf(q)
    n = 60
    for s in range(1, q + 1):
        acc = LaurentSeries.zero(f, n)
        d = 0
        while ell(f, d).degree * s < n:
            acc = acc + rational_to_series(RationalFunction(Polynomial.one(f), ell(f, d) ** s), n)
            d += 1
        assert zeta_series(f, (s,), n).agrees_with(acc)


def test_depth2_matches_direct_double_sum():
    f = gf(2)
    n = 40
    for tup in [(1, 1), (1, 3), (2, 5), (3, 2)]:
        direct = LaurentSeries.zero(f, n)
        for d1 in range(1, 5):
            for d2 in range(d1):
                direct = direct + (power_sum(f, d1, tup[0], n) * power_sum(f, d2, tup[1], n)).truncate(n)
        # levels beyond 4 are invisible at this precision for these tuples
        assert all(level_bound(2, d, tup) >= n for d in range(5, 8))
        assert zeta_series(f, tup, n).agrees_with(direct)


def test_monotone_stabilization():
    f = gf(3)
    for tup in [(1, 2), (2, 2), (1, 3, 4)]:
        lo = zeta_series(f, tup, 30)
        hi = zeta_series(f, tup, 90)
        assert hi.truncate(30) == lo


def test_heuristic_policy_agrees_and_is_flagged():
    f = gf(2)
    a = zeta_value(f, (1, 3), 60)
    b = zeta_value(f, (1, 3), 60, policy="heuristic")
    assert b.heuristic and not a.heuristic
    assert a.value == b.value


def test_zeta_ratio_examples():
    f2, f3 = gf(2), gf(3)
    t2 = Polynomial.t(f2)
    r = zeta_ratio(f2, (1, 1), 40)
    assert r.agrees_with(rational_to_series(RationalFunction(Polynomial.one(f2), t2 * t2 + t2), 40))
    r3 = zeta_ratio(f3, (1, 2), 40)
    assert r3.agrees_with(rational_to_series(RationalFunction(Polynomial.one(f3), ell(f3, 1)), 40))
    with pytest.raises(ValueError, match="depth"):
        zeta_ratio(f2, (3,), 20)


def test_tuple_predicates():
    f2, f3 = gf(2), gf(3)
    assert tuple_predicates(f2, (2, 6))["is_primitive"] is False
    p = tuple_predicates(f3, (1, 2))
    assert p["is_even_weight"] is False and p["weight"] == 3 and p["entries_even_from_2"]
    assert tuple_predicates(f2, (3, 4, 9))["is_even_weight"]
    assert tuple_predicates(f3, (1, 3))["entries_even_from_2"] is False


def test_primitive_reduce():
    assert primitive_reduce((2, 6), 2) == ((1, 3), 1)
    assert primitive_reduce((9, 18), 3) == ((1, 2), 2)
    assert primitive_reduce((1, 3), 2) == ((1, 3), 0)


def test_tuple_parsing():
    assert as_tuple("1,3") == (1, 3)
    assert as_tuple("3-4-8") == (3, 4, 8)
    assert as_tuple(5) == (5,)
    with pytest.raises(ValueError):
        as_tuple((1, 0))
    with pytest.raises(ValueError):
        as_tuple(())
