from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from qhb.errors import InvalidPair
from qhb.hjchain import chain_certificate, d_vector, hj_evaluate, hj_expand


def fraction_value(a):
    """Independent evaluation of a_1 - 1/(a_2 - ...) with Fractions."""
    v = Fraction(a[-1])
    for ai in reversed(a[:-1]):
        v = ai - 1 / v
    return v


@pytest.mark.parametrize(
    "num, den, expected",
    [(4, 1, (4,)), (25, 9, (3, 5, 2)), (25, 4, (7, 2, 2, 2))],
)
def test_hj_expand_examples(num, den, expected):
    assert fraction_value(expected) == Fraction(num, den)
    assert hj_expand(num, den).a == expected


@pytest.mark.parametrize(
    "a, expected",
    [((4,), (4, 1)), ((3, 5, 2), (25, 9)), ((12,) + (2,) * 8, (100, 9))],
)
def test_hj_evaluate_examples(a, expected):
    assert fraction_value(a) == Fraction(*expected)
    assert hj_evaluate(a) == expected


def test_hj_evaluate_tolerates_ones_while_positive():
    assert hj_evaluate([3, 1, 2]) == (1, 1)
    with pytest.raises(ValueError):
        hj_evaluate([1, 1])


@pytest.mark.parametrize("num, den", [(3, 3), (1, 2), (6, 4), (5, 0)])
def test_hj_expand_rejects(num, den):
    with pytest.raises(InvalidPair):
        hj_expand(num, den)


@given(st.integers(2, 10**6), st.integers(1, 10**6))
def test_round_trip(num, den):
    assume(num > den and gcd(num, den) == 1)
    s = hj_expand(num, den)
    assert all(ai >= 2 for ai in s.a)
    assert hj_evaluate(s.a) == (num, den)
    assert fraction_value(s.a) == Fraction(num, den)


@pytest.mark.parametrize(
    "a, expected",
    [((4,), (1,)), ((3, 5, 2), (1, 3, 14)), ((7, 2, 2, 2), (1, 7, 13, 19))],
)
def test_d_vector_examples(a, expected):
    assert d_vector(a) == expected


def test_chain_certificate_5_1():
    cert = chain_certificate(5, 1)
    assert cert.string.a == (7, 2, 2, 2)
    assert cert.d == (1, 7, 13, 19)
    assert cert.dn_check and cert.p2_check and cert.sum_check


def test_chain_certificate_2_1_uses_d0():
    cert = chain_certificate(2, 1)
    assert cert.string.a == (4,)
    assert cert.d == (1,)
    assert cert.ok


def test_chain_certificate_10_1_progression():
    cert = chain_certificate(10, 1)
    assert cert.d == tuple(1 + 11 * k for k in range(9))
    assert cert.d[-1] == 89
    assert cert.ok


def test_chain_certificate_reports_rather_than_asserts(monkeypatch):
    import qhb.hjchain as hj

    monkeypatch.setattr(hj, "d_vector", lambda a: tuple(range(1, len(a) + 1)))
    cert = hj.chain_certificate(5, 1)
    assert not cert.ok


@pytest.mark.parametrize("p, q", [(4, 2), (5, 5), (5, 7), (1, 1), (6, 0)])
def test_chain_certificate_rejects(p, q):
    with pytest.raises(InvalidPair):
        chain_certificate(p, q)


@given(st.integers(2, 3000), st.data())
def test_monotone_and_identities(p, data):
    q = data.draw(st.integers(1, p - 1))
    assume(gcd(p, q) == 1)
    cert = chain_certificate(p, q)
    assert cert.ok
    assert cert.d[0] == 1
    assert all(x < y for x, y in zip(cert.d, cert.d[1:]))
    assert cert.string.n <= p * p - 1
