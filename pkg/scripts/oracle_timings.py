"""Per-group timings of both oracles and of the two coboundary methods.

    python scripts/oracle_timings.py Z2 Z4 Z8 Z2xZ2 Z4xZ2
"""

from __future__ import annotations

import sys
import time

from cliffsplit.abelian import parse_group_spec, primary_decompose
from cliffsplit.obstruction import coboundary_solve, complement_search, obstruction_cocycle, preferred_generators
from cliffsplit.pseudo import particular_section
from cliffsplit.symplectic import DoubleSpace, ResourceError, SymplecticGroup


def timed(f, *a, **kw):
    t = time.monotonic()
    out = f(*a, **kw)
    return out, (time.monotonic() - t) * 1e3


def main(specs: list[str]):
    print(f"{'group':8} {'|Sp|':>6} {'gens':>4} {'stream ms':>10} {'tree ms':>9} {'complement ms':>14} verdict")
    for spec in specs:
        A2 = primary_decompose(parse_group_spec(spec)).two
        if A2.size == 1:
            print(f"{spec:8} odd order, no 2-part")
            continue
        sp = SymplecticGroup.enumerate(DoubleSpace(A2))
        gens = preferred_generators(sp)
        O = obstruction_cocycle(particular_section(sp))
        cols = []
        verdicts = set()
        for method in ("stream", "tree"):
            try:
                r, ms = timed(coboundary_solve, O, method=method, gens=gens, verify=False)
            except ResourceError:
                cols.append("over budget")
                continue
            verdicts.add(r.solvable)
            cols.append(f"{ms:.0f}")
        if sp.V.size ** len(gens) <= 1 << 22:
            r, ms = timed(complement_search, sp, gens)
            verdicts.add(r.found)
            cols.append(f"{ms:.0f}")
        else:
            cols.append("-")
        verdict = verdicts.pop() if len(verdicts) == 1 else "DISAGREE"
        print(f"{spec:8} {len(sp):>6} {len(gens):>4} {cols[0]:>10} {cols[1]:>9} {cols[2]:>14} {verdict}")


if __name__ == "__main__":
    main(sys.argv[1:] or ["Z2", "Z4", "Z8", "Z2xZ2", "Z4xZ2"])
