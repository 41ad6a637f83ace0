from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffsplit.abelian import make_group
from cliffsplit.pseudo import (
    CliffordElem,
    PhaseFn,
    Section,
    all_lifts,
    check_coboundary,
    clifford_inverse,
    coprime_compose,
    embed_clifford,
    kernel_elem,
    lift_of_map,
    odd_section,
    particular_lambda,
    particular_section,
    restrict_section,
    twisted_mul,
    verify_homomorphism,
)
from cliffsplit.symplectic import DoubleSpace, primary_split

GROUPS = ["Z2", "Z3", "Z4", "Z2xZ2", "Z6"]


@pytest.mark.parametrize("spec", GROUPS)
def test_particular_lambda_solves_coboundary(sp, spec):
    g = sp(spec)
    sec = particular_section(g)
    assert len(sec.coboundary_failures()) == 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["Z2", "Z4", "Z2xZ2", "Z3"]), st.data())
def test_twisted_mul_associative_and_valid(sp, spec, data):
    g = sp(spec)
    V = g.V
    pick = lambda: data.draw(st.integers(0, len(g) - 1))  # noqa: E731
    x, y, z = (lift_of_map(V, g.maps[pick()]) for _ in range(3))
    xy = twisted_mul(x, y)
    assert check_coboundary(V, xy.T, xy.lam)
    assert twisted_mul(xy, z) == twisted_mul(x, twisted_mul(y, z))
    assert twisted_mul(x, clifford_inverse(x)) == CliffordElem.identity(V)


def test_all_lifts_differ_by_characters(sp):
    g = sp("Z4")
    V = g.V
    T = g.maps[5]
    lifts = all_lifts(V, T)
    assert len(lifts) == V.size
    base = particular_lambda(V, T)
    for x in lifts:
        assert (x.lam - base).is_additive()


def test_kernel_elements_are_central_characters():
    V = DoubleSpace(make_group([4]))
    x = kernel_elem(V, (1, 3))
    assert x.is_kernel() and x.lam.is_additive()
    y = kernel_elem(V, (2, 1))
    assert twisted_mul(x, y) == twisted_mul(y, x)


def test_phasefn_must_vanish_at_zero():
    V = DoubleSpace(make_group([2]))
    with pytest.raises(ValueError):
        PhaseFn(V, np.ones(V.size))


@pytest.mark.parametrize("spec", ["Z3", "Z5"])
def test_odd_section_homomorphic(sp, spec):
    rep = verify_homomorphism(odd_section(sp(spec)))
    assert rep.ok and rep.pairs_checked == len(sp(spec)) ** 2


def test_odd_section_rejects_even():
    with pytest.raises(ValueError):
        odd_section(make_group([2]))


def test_particular_section_z2_is_not_homomorphic(sp):
    # Z2 splits, but the particular section is not itself the splitting
    assert verify_homomorphism(particular_section(sp("Z2"))).defects > 0


def test_corrupted_section_detected(sp):
    sec = odd_section(sp("Z3"))
    tab = sec.table.copy()
    tab[3, 1] = (tab[3, 1] + 2) % sec.V.den
    bad = Section(sec.sp, tab)
    rep = verify_homomorphism(bad)
    assert not rep.ok and rep.invalid_elements == 1


def test_embed_and_restrict_roundtrip(sp):
    from cliffsplit.obstruction import split_check

    v = split_check(make_group([6]))
    split = primary_split(make_group([6])).swapped()      # B = Z2
    sec2 = restrict_section(v.witness, split)
    assert verify_homomorphism(sec2).ok
    x = sec2[3]
    e = embed_clifford(x, split)
    assert check_coboundary(split.VA, e.T, e.lam)


def test_coprime_compose_requires_coprime(sp):
    from cliffsplit.symplectic import direct_sum_split

    split = direct_sum_split(make_group([2]), make_group([2]))
    sec = particular_section(sp("Z2"))
    with pytest.raises(ValueError):
        coprime_compose(sec, sec, split)
