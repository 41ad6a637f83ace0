from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffsplit.abelian import make_group, parse_group_spec
from cliffsplit.obstruction import (
    BudgetExceeded,
    ObstructionCocycle,
    SplitBudget,
    check_cocycle_identity,
    class_difference_check,
    coboundary_solve,
    complement_search,
    obstruction_cocycle,
    perturbed_section,
    split_check,
)
from cliffsplit.pseudo import odd_section, particular_section, verify_homomorphism
from cliffsplit.symplectic import ResourceError


def test_normalisation(sp):
    for spec in ["Z2", "Z4", "Z3"]:
        g = sp(spec)
        tab = obstruction_cocycle(particular_section(g)).table()
        assert not tab[g.identity].any() and not tab[:, g.identity].any()


def test_z4_obstruction_nonzero(sp):
    assert not obstruction_cocycle(particular_section(sp("Z4"))).is_zero()


@pytest.mark.parametrize("spec", ["Z2", "Z3", "Z4", "Z6"])
def test_cocycle_identity_exhaustive(sp, spec):
    cc = check_cocycle_identity(obstruction_cocycle(particular_section(sp(spec))))
    assert cc.ok and cc.mode == "exhaustive" and cc.triples == len(sp(spec)) ** 3


def test_cocycle_identity_sampled_reports_mode(sp):
    O = obstruction_cocycle(particular_section(sp("Z8")))
    cc = check_cocycle_identity(O, samples=100_000, seed=3)
    assert cc.ok and cc.mode == "sampled" and cc.triples == 100_000 and cc.seed == 3


def test_zero_table_passes(sp):
    g = sp("Z4")
    assert check_cocycle_identity(ObstructionCocycle(g, table=np.zeros((48, 48), dtype=np.int64))).ok


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 47), st.integers(0, 47), st.integers(1, 15))
def test_corruption_detected(sp, t, s, shift):
    g = sp("Z4")
    O = obstruction_cocycle(particular_section(g))
    if t == g.identity or s == g.identity:
        return
    bad = O.with_entry(t, s, int(g.V.add_table[O.table()[t, s], shift]))
    cc = check_cocycle_identity(bad)
    assert not cc.ok and cc.first_failure is not None


def test_zero_cocycle_zero_cochain(sp):
    g = sp("Z4")
    res = coboundary_solve(ObstructionCocycle(g, table=np.zeros((48, 48), dtype=np.int64)))
    assert res.solvable and not res.cochain.any()


@pytest.mark.parametrize("spec,solvable", [("Z2", True), ("Z3", True), ("Z4", False), ("Z6", True),
                                           ("Z2xZ2", False)])
def test_coboundary_verdicts(sp, spec, solvable):
    O = obstruction_cocycle(particular_section(sp(spec)))
    res = coboundary_solve(O)
    assert res.solvable == solvable
    if solvable:
        assert res.homomorphism.ok
        assert obstruction_cocycle(res.corrected).is_zero()


@pytest.mark.parametrize("spec", ["Z2", "Z4", "Z8", "Z3"])
def test_stream_and_tree_agree(sp, spec):
    O = obstruction_cocycle(particular_section(sp(spec)))
    assert coboundary_solve(O, method="stream").solvable == coboundary_solve(O, method="tree").solvable


@pytest.mark.parametrize("spec,found", [("Z2", True), ("Z4", False), ("Z3", True)])
def test_complement_search(sp, spec, found):
    res = complement_search(sp(spec))
    assert res.found == found
    assert res.tuples_checked <= res.tuples_total
    if found:
        assert verify_homomorphism(res.witness).ok


def test_complement_search_deterministic_with_workers(sp):
    a = complement_search(sp("Z2"), workers=1, chunk=2)
    b = complement_search(sp("Z2"), workers=3, chunk=2)
    assert a.tuple_index == b.tuple_index and a.lift_params == b.lift_params


def test_complement_budget(sp):
    with pytest.raises(ResourceError):
        complement_search(sp("Z4"), max_tuples=10)


@pytest.mark.parametrize("spec", ["Z4", "Z2", "Z3"])
def test_class_difference(sp, spec):
    g = sp(spec)
    base = odd_section(g) if len(g.V.moduli) and g.V.base.size % 2 else particular_section(g)
    assert class_difference_check(base, perturbed_section(base, seed=7))


def test_split_check_record_fields():
    v = split_check(parse_group_spec("Z2"))
    rec = v.record()
    for key in ("group", "splits", "oracles", "witness_digest", "timings", "theorem_prediction", "agreement"):
        assert key in rec
    assert v.splits and v.agreement and not v.discrepancy and len(rec["witness_digest"]) == 64


def test_split_check_mixed_group_composes():
    v = split_check(make_group([6]))
    assert v.splits and v.homomorphism.pairs_checked == 144 ** 2


def test_split_check_oracle_choice():
    v = split_check(make_group([4]), oracle="complement")
    assert v.splits is False and "coboundary" not in v.oracles
    with pytest.raises(ValueError):
        split_check(make_group([4]), oracle="nope")


def test_split_check_budget_exceeded():
    v = split_check(make_group([4, 2]), budget=SplitBudget(budget_ms=1e-6))
    assert v.splits is None and v.error
    assert issubclass(BudgetExceeded, ResourceError)


def test_trivial_group_splits():
    v = split_check(make_group([1]))
    assert v.splits and v.theorem_prediction
