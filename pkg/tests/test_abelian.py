from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliffsplit.abelian import (
    GroupElem,
    GroupSpecError,
    Phase,
    crt_pair,
    make_group,
    pairing,
    parse_group_spec,
    primary_decompose,
)


def test_parse_examples():
    assert parse_group_spec("Z4xZ2").orders == (4, 2)
    assert parse_group_spec("z2 x z2").orders == (2, 2)
    assert parse_group_spec("Z2xZ4").orders == (4, 2)


@pytest.mark.parametrize("text,offset", [("Z0", 0), ("Z4yZ2", 2), ("Z4x", 3), ("", 0), ("  Q3", 2)])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(GroupSpecError) as exc:
        parse_group_spec(text)
    assert exc.value.offset == offset


def test_group_cached_values():
    A = make_group([2, 12, 3])
    assert A.orders == (12, 3, 2)
    assert A.size == 72 and A.exponent == 12
    assert make_group([]).is_trivial()


@given(st.integers(-50, 50), st.integers(1, 40), st.integers(-50, 50), st.integers(1, 40))
def test_phase_matches_fraction(a, b, c, d):
    p, q = Phase(a, b), Phase(c, d)
    assert (p + q).as_fraction() == (Fraction(a, b) + Fraction(c, d)) % 1
    assert (p - p).is_zero()
    assert (3 * p).as_fraction() == (3 * Fraction(a, b)) % 1


@given(st.lists(st.integers(1, 12), min_size=1, max_size=3), st.data())
def test_pairing_is_biadditive(orders, data):
    A = make_group(orders)

    def elem():
        return GroupElem(A, tuple(data.draw(st.integers(0, d - 1)) for d in A.orders))

    chi, a, b = elem(), elem(), elem()
    assert pairing(chi, a + b) == pairing(chi, a) + pairing(chi, b)
    assert pairing(chi, a) == pairing(a, chi)


@given(st.integers(1, 60), st.integers(1, 60))
def test_crt_pair(m1, m2):
    from math import gcd

    if gcd(m1, m2) != 1:
        return
    x = crt_pair(m1 - 1, m1, m2 - 1, m2)
    assert x % m1 == (m1 - 1) % m1 and x % m2 == (m2 - 1) % m2


@given(st.lists(st.integers(1, 24), min_size=1, max_size=3), st.data())
def test_primary_decomposition_roundtrip(orders, data):
    A = make_group(orders)
    pd = primary_decompose(A)
    assert pd.odd.size % 2 == 1
    assert pd.two.size & (pd.two.size - 1) == 0
    assert pd.odd.size * pd.two.size == A.size
    a = GroupElem(A, tuple(data.draw(st.integers(0, d - 1)) for d in A.orders))
    assert pd.join(*pd.split(a)) == a
