"""Continued fractions and rationality detection."""
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zetalike.algebra import LaurentSeries, Polynomial, RationalFunction, rational_to_series
from zetalike.multizeta import zeta_ratio, zeta_series
from zetalike.rationality import continued_fraction, detect_rational, reconstruct_at_spike

from conftest import gf


def random_rational(f, rng, max_deg=10):
    q = f.q
    while True:
        num = Polynomial(f, [rng.randrange(q) for _ in range(rng.randint(1, max_deg + 1))])
        den = Polynomial(f, [rng.randrange(q) for _ in range(rng.randint(1, max_deg + 1))])
        if not den.is_zero():
            return RationalFunction(num, den)


def test_cf_of_polynomial():
    f = gf(3)
    p = Polynomial(f, [1, 2, 0, 1])
    cf = continued_fraction(LaurentSeries.from_polynomial(p).truncate(10))
    assert cf.partial_quotients == [p] and cf.stop == "exact"


def test_cf_examples_q2():
    f = gf(2)
    t = Polynomial.t(f)
    cf = continued_fraction(rational_to_series(RationalFunction(t * t + 1, t * t + t), 20))
    assert cf.partial_quotients == [Polynomial.one(f), t]
    cf2 = continued_fraction(rational_to_series(RationalFunction(t * t + 1, t), 20))
    assert cf2.partial_quotients == [t, t]


def test_reconstruct_at_spike():
    f = gf(2)
    t = Polynomial.t(f)
    cf = continued_fraction(rational_to_series(RationalFunction(t * t + 1, t * t + t), 20))
    assert reconstruct_at_spike(cf, 2) == RationalFunction(t + 1, t)
    assert reconstruct_at_spike(cf, 1) == RationalFunction(Polynomial.one(f))
    with pytest.raises(IndexError):
        reconstruct_at_spike(cf, 3)


def test_convergent_recurrence_and_degrees():
    f = gf(5)
    rng = random.Random(3)
    r = random_rational(f, rng)
    cf = continued_fraction(rational_to_series(r, 40))
    qs = [q for _, q in cf.convergents]
    degs = [q.degree for q in qs]
    assert all(a < b for a, b in zip(degs, degs[1:]))
    for k in range(2, len(cf.convergents)):
        a = cf.partial_quotients[k]
        (p2, q2), (p1, q1), (p0, q0) = cf.convergents[k - 2], cf.convergents[k - 1], cf.convergents[k]
        assert p0 == a * p1 + p2 and q0 == a * q1 + q2


@pytest.mark.parametrize("q", (2, 3, 5))
def test_convergent_quality(q):
    # val(x - p_k/q_k) = deg q_k + deg q_{k+1}
    f = gf(q)
    rng = random.Random(q)
    for _ in range(20):
        r = random_rational(f, rng)
        x = rational_to_series(r, 80)
        cf = continued_fraction(x)
        for k in range(len(cf.convergents) - 1):
            pk, qk = cf.convergents[k]
            qn = cf.convergents[k + 1][1]
            diff = x - rational_to_series(RationalFunction(pk, qk), 80)
            assert diff.valuation == qk.degree + qn.degree


def test_quotients_are_prefix_stable():
    f = gf(3)
    rng = random.Random(11)
    for _ in range(20):
        r = random_rational(f, rng)
        a = continued_fraction(rational_to_series(r, 25)).partial_quotients
        b = continued_fraction(rational_to_series(r, 50)).partial_quotients
        assert b[:len(a)] == a


def test_detects_exact_rational():
    f = gf(2)
    t = Polynomial.t(f)
    r = RationalFunction(Polynomial.one(f), t * t + t)
    v = detect_rational(rational_to_series(r, 30))
    assert v.status == "rational" and v.ratio == r


def test_detects_zeta_ratio_with_reverification():
    f = gf(2)
    t = Polynomial.t(f)
    v = detect_rational(zeta_ratio(f, (1, 1), 40), reverify=lambda n: zeta_ratio(f, (1, 1), n))
    assert v.status == "rational"
    assert v.ratio == RationalFunction(Polynomial.one(f), t * t + t)
    assert v.precisions_used == (40, 80)


def test_zeta_one_is_not_detected():
    f = gf(2)
    v = detect_rational(zeta_series(f, (1,), 40), reverify=lambda n: zeta_series(f, (1,), n))
    assert v.status == "not_detected"


def test_no_false_positives_on_random_tails():
    rng = np.random.default_rng(5)
    for i in range(100):
        q = (2, 3, 4, 5)[i % 4]
        f = gf(q)
        coeffs = rng.integers(0, q, size=400)
        coeffs[0] = 1 + rng.integers(0, q - 1)

        def make(n, c=coeffs, f=f):
            return LaurentSeries(f, 0, c[:n], n)

        v = detect_rational(make(40), reverify=make)
        assert v.status == "not_detected"


def test_spike_candidate_when_precision_is_overstated():
    # a rational plus a far-away perturbation looks like a spike at low precision
    f = gf(2)
    t = Polynomial.t(f)
    r = RationalFunction(t + 1, t ** 3 + t + 1)
    base = rational_to_series(r, 60)
    noisy = base + LaurentSeries(f, 30, [1], None)
    x = noisy.truncate(60)
    v = detect_rational(x, reverify=lambda n: rational_to_series(r, n))
    assert v.status == "rational" and v.ratio == r and v.spike_degree is not None


@given(st.sampled_from((2, 3, 4, 5)), st.integers(0, 10 ** 9))
def test_roundtrip_property(q, seed):
    f = gf(q)
    r = random_rational(f, random.Random(seed))
    v = detect_rational(rational_to_series(r, 25))
    assert v.status == "rational" and v.ratio == r
