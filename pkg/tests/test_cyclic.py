from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffsplit.cyclic import (
    LiftParams,
    constraint_report,
    lambda_closed_form,
    lift_s,
    lift_t,
    parity_constraint_check,
    phase_at,
    power_phase,
    reference_identity_holds,
    residual_character,
    v_w_closed_form,
    word_w,
)


def test_lift_values():
    lt = lift_t(4, 0, 0)
    assert phase_at(lt.lam, 0, 1).as_fraction() == 0.125          # p^2/(2N)
    ls = lift_s(4, 0, 0)
    assert phase_at(ls.lam, 1, 1).as_fraction() == 0.75           # -ap/N
    assert phase_at(lift_t(4, 1, 0).lam, 1, 0).as_fraction() == 0.25


def test_invalid_parameters():
    with pytest.raises(ValueError):
        LiftParams(6)
    with pytest.raises(ValueError):
        LiftParams(4, x=4)


@pytest.mark.parametrize("N", [2, 4, 8])
def test_parity_closed_form(N):
    rep = parity_constraint_check(N)
    assert rep.ok and rep.pairs == N * N
    assert len(rep.identity_pairs) == N * N // 2


def test_lambda_closed_form_values():
    # x even gives (-1)^p, x odd gives 1
    assert np.array_equal(power_phase(lift_t(4, 0, 2), 4).table, lambda_closed_form(4, 0))
    assert not lambda_closed_form(4, 1).any()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 4, 8]), st.data())
def test_residual_character_property(N, data):
    x, y, z, w = (data.draw(st.integers(0, N - 1)) for _ in range(4))
    assert residual_character(N, x, y, z, w) == v_w_closed_form(N, x, y, z, w)
    assert word_w(N, x, y, z, w).is_kernel()


def test_residual_example():
    assert residual_character(4, 1, 0, 0, 0) == (0, 2)


@pytest.mark.parametrize("N", [2, 4, 8, 16])
def test_reference_identity(N):
    assert reference_identity_holds(N)


@pytest.mark.parametrize("N,inter", [(2, [1]), (4, []), (8, [])])
def test_constraint_report(N, inter):
    c = constraint_report(N)
    assert c.intersection == inter
    assert c.parity_matches_closed_form and c.modular_matches_closed_form
    assert c.to_dict()["N"] == N
