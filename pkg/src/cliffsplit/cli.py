"""Command-line front end: ``cliffsplit <verb> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .abelian import GroupSpecError, parse_group_spec
from .report import RunConfig, _jsonable, load_config, run_roster

EXIT_OK, EXIT_DISAGREE, EXIT_ERROR, EXIT_NONSPLIT = 0, 1, 2, 3


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(_jsonable(payload), indent=2))
    else:
        print(text)


def _group(args):
    return parse_group_spec(args.group)


def cmd_split_check(args) -> int:
    from .obstruction import SplitBudget, split_check

    A = _group(args)
    budget = SplitBudget(budget_ms=args.budget_ms, workers=args.workers, seed=args.seed)
    v = split_check(A, oracle=args.oracle, budget=budget)
    rec = v.record()
    payload = {k: rec[k] for k in ("group", "splits", "oracles", "witness_digest", "timings",
                                   "theorem_prediction", "agreement", "discrepancy", "error")}
    verdict = {True: "SPLITS", False: "DOES NOT SPLIT", None: "UNDECIDED"}[v.splits]
    lines = [f"{v.group}: {verdict}"]
    for name, o in v.oracles.items():
        lines.append(f"  {name}: " + (f"splits={o['splits']}" if o.get("ran") else f"skipped ({o.get('reason')})"))
    lines.append(f"  prediction (4 does not divide |A|): {v.theorem_prediction}  agreement: {v.agreement}")
    if v.witness_digest:
        lines.append(f"  witness sha256: {v.witness_digest}")
    if v.error:
        lines.append(f"  error: {v.error}")
    _emit(args, payload, "\n".join(lines))
    if v.splits is None or v.error:
        return EXIT_ERROR
    return EXIT_OK if v.splits else EXIT_NONSPLIT


def cmd_obstruction(args) -> int:
    from .obstruction import check_cocycle_identity, obstruction_cocycle
    from .pseudo import particular_section
    from .symplectic import DoubleSpace, SymplecticGroup

    A = _group(args)
    sp = SymplecticGroup.enumerate(DoubleSpace(A))
    O = obstruction_cocycle(particular_section(sp))
    cc = check_cocycle_identity(O, samples=100_000, seed=args.seed)
    tab = O.table()
    payload = {
        "group": A.spec(), "sp_order": len(sp), "moduli": list(sp.V.moduli), "section": "particular",
        "is_zero": not tab.any(), "nonzero_pairs": int(np.count_nonzero(tab)),
        "cocycle_check": {"ok": cc.ok, "mode": cc.mode, "triples": cc.triples, "failures": cc.failures},
    }
    if args.dump:
        # row t, column s: O(T_t, T_s) in V coordinates, pairs indexed by Sp rank
        payload["table"] = sp.V.elems[tab].tolist()
    text = (f"{A.spec()}: |Sp| = {len(sp)}, nonzero entries {payload['nonzero_pairs']} of {len(sp) ** 2}, "
            f"cocycle identity {'ok' if cc.ok else 'FAILED'} ({cc.mode}, {cc.triples} triples)")
    if args.dump and not args.json:
        print(json.dumps(_jsonable(payload)))
    else:
        _emit(args, payload, text)
    return EXIT_OK if cc.ok else EXIT_ERROR


def cmd_sp_enumerate(args) -> int:
    from .symplectic import DoubleSpace, SymplecticGroup

    A = _group(args)
    sp = SymplecticGroup.enumerate(DoubleSpace(A))
    payload = {"group": A.spec(), "moduli": list(sp.V.moduli), "order": len(sp)}
    if args.json or args.matrices:
        payload["matrices"] = [T.matrix.ravel().tolist() for T in sp.maps]
    lines = [f"|Sp(V_{A.spec()})| = {len(sp)}"]
    if args.matrices:
        lines += [str(T.matrix.tolist()) for T in sp.maps]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_odd_section(args) -> int:
    from .obstruction import obstruction_cocycle
    from .pseudo import odd_section, verify_homomorphism
    from .symplectic import DoubleSpace, SymplecticGroup

    A = _group(args)
    sp = SymplecticGroup.enumerate(DoubleSpace(A))
    sec = odd_section(sp)
    hom = verify_homomorphism(sec)
    zero = obstruction_cocycle(sec).is_zero() if len(sp) ** 2 <= 4_000_000 else None
    payload = {"group": A.spec(), "sp_order": len(sp), "pairs_checked": hom.pairs_checked,
               "defects": hom.defects, "probe": hom.probe, "obstruction_zero": zero}
    if args.json:
        payload["den"] = sp.V.den
        payload["section"] = [{"matrix": T.matrix.tolist(), "phases": sec.table[k].tolist()}
                              for k, T in enumerate(sp.maps)]
    _emit(args, payload, f"{A.spec()}: odd section checked over {hom.pairs_checked} pairs, "
                         f"{hom.defects} defects, obstruction zero: {zero}")
    return EXIT_OK if hom.ok else EXIT_ERROR


def cmd_cyclic_constraints(args) -> int:
    from .cyclic import constraint_report

    c = constraint_report(args.N)
    payload = c.to_dict()
    text = "\n".join([
        f"N = {c.N}",
        f"  parity constraint (t^N = 1):       x in {c.parity_set}",
        f"  modular constraint ((st)^3 = s^2): x in {c.modular_set}",
        f"  intersection: {c.intersection or 'empty'}",
        f"  brute force matches closed forms: parity {c.parity_matches_closed_form}, "
        f"modular {c.modular_matches_closed_form}; reference identity {c.reference_identity}",
    ])
    _emit(args, payload, text)
    ok = c.parity_matches_closed_form and c.modular_matches_closed_form and c.reference_identity
    return EXIT_OK if ok else EXIT_ERROR


def cmd_tambara(args) -> int:
    from .symplectic import tambara_check

    A = _group(args)
    r = tambara_check(A)
    payload = {"group": A.spec(), "bil": r.n_bil, "sym": r.n_sym, "alt": r.n_alt,
               "surjective": r.surjective, "kernel_is_sym": r.kernel_is_sym, "exact": r.exact}
    _emit(args, payload, f"{A.spec()}: |Bil| = {r.n_bil}, |Sym| = {r.n_sym}, |Alt| = {r.n_alt}, "
                         f"exact: {r.exact}")
    return EXIT_OK if r.exact else EXIT_ERROR


def cmd_weyl(args) -> int:
    from .weyl import check_weyl_relations

    r = check_weyl_relations(_group(args))
    payload = {"group": r.group, "pairs": r.pairs, "worst_deviation": r.worst, "ok": r.ok,
               "product": r.product_deviation, "commutation": r.commutation_deviation,
               "unitarity": r.unitarity_deviation}
    _emit(args, payload, f"{r.group}: worst deviation {r.worst:.3e} over {r.pairs} pairs")
    return EXIT_OK if r.ok else EXIT_ERROR


def cmd_report(args) -> int:
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.roster is not None:
        cfg.roster = [s.strip() for s in args.roster.split(",") if s.strip()]
    if args.budget_ms is not None:
        cfg.budget_ms = args.budget_ms
    if args.workers != 1:
        cfg.workers = args.workers
    if args.seed:
        cfg.seed = args.seed
    if args.no_sweeps:
        cfg.sweeps = False
    rep = run_roster(cfg)
    out = rep.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    print(out if args.json else rep.table())
    return rep.exit_code


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # verbs repeat the global flags with suppressed defaults, so a flag given
        # before the verb is not reset by the verb's parser
        g = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
        g.add_argument("--budget-ms", type=float, default=d(None), help="wall-clock budget per check")
        g.add_argument("--workers", type=int, default=d(1), help="worker threads")
        g.add_argument("--seed", type=int, default=d(0), help="seed for sampled checks")
        g.add_argument("-v", "--verbose", action="store_true", default=d(False))
        return g

    common = global_flags(suppress=True)

    p = argparse.ArgumentParser(prog="cliffsplit", parents=[global_flags(suppress=False)],
                                description="Exact splitting checks for Clifford extensions of finite abelian groups.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help, group=True):
        s = sub.add_parser(name, parents=[common], help=help)
        if group:
            s.add_argument("group", help="group spec such as Z4xZ2")
        s.set_defaults(func=func)
        return s

    s = verb("split-check", cmd_split_check, "decide whether the extension splits")
    s.add_argument("--oracle", choices=["coboundary", "complement", "both"], default="both")
    s = verb("obstruction", cmd_obstruction, "obstruction cocycle of the particular section")
    s.add_argument("--dump", action="store_true", help="include the full cocycle table")
    s = verb("sp-enumerate", cmd_sp_enumerate, "enumerate Sp(V_A)")
    s.add_argument("--matrices", action="store_true", help="print every matrix")
    verb("odd-section", cmd_odd_section, "build and verify the odd-order splitting")
    s = verb("cyclic-constraints", cmd_cyclic_constraints, "parity and modular constraints for Z_N", group=False)
    s.add_argument("N", type=int)
    verb("tambara-check", cmd_tambara, "exactness of Sym -> Bil -> Alt")
    verb("weyl-verify", cmd_weyl, "numeric Weyl relations")
    s = verb("report", cmd_report, "run the roster and the side checks", group=False)
    s.add_argument("--config", help="key = value config file")
    s.add_argument("--roster", help="comma-separated group specs (empty string for none)")
    s.add_argument("--output", help="also write the JSON report here")
    s.add_argument("--no-sweeps", action="store_true", help="skip the side checks")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except GroupSpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, RuntimeError, AssertionError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
