"""Finite field arithmetic on integer codes."""
import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zetalike.algebra import DEFAULT_MODULI, FieldConfig, prime_power
from zetalike.algebra.field import is_irreducible_mod_p

QS = (2, 3, 4, 5, 7, 8, 9, 25, 27)


def test_prime_power():
    assert prime_power(2) == (2, 1)
    assert prime_power(9) == (3, 2)
    assert prime_power(27) == (3, 3)
    assert prime_power(25) == (5, 2)
    for bad in (0, 1, 6, 10, 12, 100):
        with pytest.raises(ValueError, match="prime power"):
            prime_power(bad)


def test_default_moduli_irreducible():
    for q, m in DEFAULT_MODULI.items():
        p, s = prime_power(q)
        assert len(m) == s + 1
        assert is_irreducible_mod_p(m, p)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError, match="reducible"):
        FieldConfig(2, 2, (1, 0, 1))  # (x+1)^2
    with pytest.raises(ValueError, match="reducible"):
        FieldConfig(3, 2, (2, 0, 1))  # x^2 - 1


def test_f4_generator():
    f = FieldConfig.for_q(4)
    g = f(2)  # the class of x
    assert g * g == g + 1
    assert g ** 3 == 1


def test_prime_field_codes_print_as_integers():
    f = FieldConfig.for_q(9)
    assert f.format_code(2) == "2"
    assert f.format_code(3) == "g"
    assert f.format_code(5) == "(g + 2)"


@pytest.mark.parametrize("q", QS)
def test_multiplicative_group_order(q):
    f = FieldConfig.for_q(q)
    for a in range(1, q):
        assert f.pow(a, q - 1) == 1
        assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("q", QS)
def test_frobenius_is_additive(q):
    f = FieldConfig.for_q(q)
    fr = f.frobenius_table
    for a, b in itertools.product(range(q), repeat=2):
        assert fr[f.add(a, b)] == f.add(int(fr[a]), int(fr[b]))
    # the prime field is fixed
    assert all(fr[a] == a for a in range(f.p))


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        FieldConfig.for_q(4).inv(0)


@st.composite
def field_and_elems(draw, n=3):
    q = draw(st.sampled_from(QS))
    f = FieldConfig.for_q(q)
    return f, [f(draw(st.integers(0, q - 1))) for _ in range(n)]


@given(field_and_elems())
def test_field_axioms(data):
    f, (a, b, c) = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if b:
        assert (a / b) * b == a


@given(st.sampled_from(QS), st.data())
def test_convolve_matches_schoolbook(q, data):
    f = FieldConfig.for_q(q)
    a = data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=8))
    b = data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=8))
    want = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            want[i + j] = f.add(want[i + j], f.mul(x, y))
    got = f.convolve(np.array(a), np.array(b))
    assert list(got) == want
