"""Exact splitting checks for the Clifford extension of a finite abelian group."""

from __future__ import annotations

from .abelian import FinAbGroup, GroupSpecError, Phase, make_group, parse_group_spec, primary_decompose
from .cyclic import constraint_report, lift_s, lift_t, parity_constraint_check, residual_character
from .obstruction import (
    ObstructionCocycle,
    SplitBudget,
    SplitVerdict,
    check_cocycle_identity,
    class_difference_check,
    coboundary_solve,
    complement_search,
    obstruction_cocycle,
    split_check,
)
from .pseudo import (
    CliffordElem,
    PhaseFn,
    Section,
    clifford_inverse,
    coprime_compose,
    odd_section,
    particular_section,
    restrict_section,
    twisted_mul,
    verify_homomorphism,
)
from .report import RunConfig, RunReport, run_roster
from .symplectic import DoubleSpace, EndoMap, ResourceError, SymplecticGroup, primary_split, tambara_check
from .weyl import check_weyl_relations

__version__ = "0.1.0"
