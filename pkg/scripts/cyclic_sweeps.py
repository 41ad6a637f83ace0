"""Brute-force checks of the power-phase and residual-character closed forms for Z_N, N = 2^k.

    python scripts/cyclic_sweeps.py [N ...]
"""

from __future__ import annotations

import sys
import time

from cliffsplit.cyclic import constraint_report, parity_constraint_check, residual_sweep


def main(Ns: list[int]):
    for N in Ns:
        t = time.monotonic()
        p = parity_constraint_check(N)
        samples = None if N ** 4 <= 4096 else 256
        r = residual_sweep(N, samples, seed=0)
        c = constraint_report(N)
        print(f"N={N}: power phase {'ok' if p.ok else 'MISMATCH'} over {p.pairs} (x, y); "
              f"residual {r.mode} {r.tuples} tuples, {r.mismatches} mismatches; "
              f"parity x in {c.parity_set}, modular x in {c.modular_set}, "
              f"intersection {c.intersection or 'empty'} ({time.monotonic() - t:.1f} s)")


if __name__ == "__main__":
    main([int(x) for x in sys.argv[1:]] or [2, 4, 8])
