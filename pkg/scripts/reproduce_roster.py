"""Run the default roster plus side checks and write the JSON report.

    python scripts/reproduce_roster.py [--workers N] [--out report.json]
"""

from __future__ import annotations

import argparse
import sys

from cliffsplit.report import RunConfig, RunReport, run_roster


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="report.json")
    args = ap.parse_args()
    rep = run_roster(RunConfig(workers=args.workers, seed=args.seed))
    text = rep.to_json()
    assert RunReport.from_json(text) == rep
    with open(args.out, "w") as fh:
        fh.write(text + "\n")
    print(rep.table())
    print(f"total {rep.elapsed_ms / 1e3:.1f} s, report written to {args.out}")
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
