from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffsplit.abelian import make_group
from cliffsplit.symplectic import (
    DoubleSpace,
    EndoMap,
    ResourceError,
    all_bicharacters,
    beta,
    beta_bicharacter,
    cyclic_generators,
    direct_sum_split,
    find_generating_set,
    is_biadditive,
    is_symplectic,
    kappa,
    kappa_inv,
    omega,
    primary_split,
    tambara_check,
)

SMALL = ["Z2", "Z3", "Z4", "Z6", "Z2xZ2", "Z4xZ2", "Z3xZ3"]


def test_omega_is_alternating_and_nondegenerate():
    for spec in SMALL:
        V = DoubleSpace(make_group([int(x[1:]) for x in spec.split("x")]))
        om = V.omega_table
        assert not np.any(np.diagonal(om))
        assert np.array_equal((om + om.T) % V.den, np.zeros_like(om))
        # kappa is injective: distinct rows
        assert len({row.tobytes() for row in om}) == V.size


@given(st.sampled_from([[2], [4], [6], [2, 2], [4, 2], [3, 3]]), st.data())
def test_kappa_inverse_roundtrip(orders, data):
    V = DoubleSpace(make_group(orders))
    v = data.draw(st.integers(0, V.size - 1))
    assert kappa_inv(V, kappa(V, v)) == v


def test_beta_convention():
    V = DoubleSpace(make_group([4]))
    # beta((a, p), (b, q)) = p b / 4
    assert beta(V, (0, 1), (1, 0)).as_fraction() == 0.25
    assert beta(V, (1, 0), (0, 1)).is_zero()
    assert omega(V, (0, 1), (1, 0)).as_fraction() == 0.25


@pytest.mark.parametrize("spec,order", [("Z2", 6), ("Z3", 24), ("Z4", 48), ("Z5", 120), ("Z8", 384),
                                        ("Z9", 648), ("Z2xZ2", 720)])
def test_sp_orders(sp, spec, order):
    assert len(sp(spec)) == order


def test_sp_elements_are_symplectic_and_closed(sp):
    g = sp("Z4")
    for T in g.maps:
        assert is_symplectic(g.V, T)
    mt = g.mult_table
    assert np.all(np.sort(mt, axis=1) == np.arange(len(g)))
    inv = g.inverses
    assert np.all(mt[np.arange(len(g)), inv] == g.identity)


def test_cyclic_generators_generate(sp):
    for spec in ["Z2", "Z3", "Z4", "Z8", "Z9"]:
        g = sp(spec)
        t, s = cyclic_generators(g.V)
        assert g.closure_mask([g.index(t), g.index(s)]).all()


def test_generating_set_noncyclic(sp):
    for spec in ["Z2xZ2", "Z3xZ3"]:
        g = sp(spec)
        gens = find_generating_set(g)
        assert len(gens) <= 3
        assert g.closure_mask(gens).all()


def test_endomap_rejects_ill_defined_matrix():
    V = DoubleSpace(make_group([4, 2]))
    with pytest.raises(ValueError):
        EndoMap(V, np.array([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


@pytest.mark.parametrize("moduli", [(2, 2), (3, 3), (4,), (2, 4)])
def test_tambara_exact(moduli):
    r = tambara_check(moduli)
    assert r.exact and r.n_bil == r.n_sym * r.n_alt


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, 2), (3,), (4, 2)]), st.data())
def test_bicharacters_biadditive(moduli, data):
    bs = all_bicharacters(moduli)
    assert is_biadditive(data.draw(st.sampled_from(bs)))


def test_beta_bicharacter_matches_table():
    V = DoubleSpace(make_group([4, 2]))
    B = beta_bicharacter(V)
    t = B.table() * (V.den // B.den)
    assert np.array_equal(t % V.den, V.beta_table)


@pytest.mark.parametrize("spec", ["Z6", "Z12", "Z6xZ2"])
def test_primary_split_compatible(spec):
    A = make_group([int(x[1:]) for x in spec.split("x")])
    s = primary_split(A)
    assert s.B.size % 2 == 1 and s.B.size * s.C.size == A.size
    sw = s.swapped()
    assert sw.B == s.C and np.array_equal(sw.from_bc, s.from_bc.T)
    sw.check_cocycle_compatible()


def test_direct_sum_split():
    s = direct_sum_split(make_group([2]), make_group([3]))
    assert s.A.orders == (3, 2)


def test_oversized_double_is_resource_error():
    with pytest.raises(ResourceError):
        DoubleSpace(make_group([64, 64]))
