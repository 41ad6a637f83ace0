"""Roster runs: split checks plus the side sweeps, assembled into a JSON-able report."""

from __future__ import annotations

import configparser
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .abelian import GroupSpecError, parse_group_spec
from .obstruction import SplitBudget, split_check

FORMAT_VERSION = "cliffsplit-report/1"

DEFAULT_ROSTER = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z9", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3"]


def _jsonable(x):
    """Round-trip through JSON so in-memory records equal parsed ones."""
    def default(o):
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        raise TypeError(f"not JSON serialisable: {type(o).__name__}")
    return json.loads(json.dumps(x, default=default))


@dataclass
class RunConfig:
    roster: list[str] = field(default_factory=lambda: list(DEFAULT_ROSTER))
    oracle: str = "both"
    budget_ms: float | None = None
    workers: int = 1
    seed: int = 0
    max_sp: int = 100_000
    stream_max_sp: int = 1500
    complement_max_work: float = 1e10
    cocycle_samples: int = 100_000
    tambara: list[str] = field(default_factory=lambda: ["Z2xZ2", "Z3xZ3"])
    weyl: list[str] = field(default_factory=lambda: ["Z2", "Z3", "Z4", "Z2xZ2"])
    cyclic: list[int] = field(default_factory=lambda: [2, 4, 8])
    residual_samples: int = 256
    sweeps: bool = True

    def budget(self) -> SplitBudget:
        return SplitBudget(max_sp=self.max_sp, stream_max_sp=self.stream_max_sp,
                           complement_max_work=self.complement_max_work,
                           cocycle_samples=self.cocycle_samples, budget_ms=self.budget_ms,
                           workers=1, seed=self.seed)


_LIST_KEYS = {"roster": str, "tambara": str, "weyl": str, "cyclic": int}
_SCALAR_KEYS = {"oracle": str, "budget_ms": float, "workers": int, "seed": int, "max_sp": int,
                "stream_max_sp": int, "complement_max_work": float, "cocycle_samples": int,
                "residual_samples": int}


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """``key = value`` lines; lists are comma separated; ``#`` starts a comment."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    cp.read_string("[run]\n" + text)
    cfg = base or RunConfig()
    for key, raw in cp["run"].items():
        key = key.replace("-", "_")
        raw = raw.strip()
        if key in _LIST_KEYS:
            conv = _LIST_KEYS[key]
            setattr(cfg, key, [conv(v.strip()) for v in raw.split(",") if v.strip()])
        elif key in _SCALAR_KEYS:
            setattr(cfg, key, None if raw.lower() in ("", "none") else _SCALAR_KEYS[key](raw))
        elif key == "sweeps":
            cfg.sweeps = cp["run"].getboolean(key)
        else:
            raise ValueError(f"unknown config key {key!r}")
    return cfg


def load_config(path: str, base: RunConfig | None = None) -> RunConfig:
    with open(path) as fh:
        return parse_config(fh.read(), base)


@dataclass
class RosterRow:
    group: str
    v_order: int | None
    sp_order: int | None
    splits: bool | None
    theorem_prediction: bool | None
    agreement: bool | None
    discrepancy: bool
    oracles: dict
    timings_ms: dict
    witness_digest: str | None
    homomorphism: dict | None
    error: str | None = None


@dataclass
class RunReport:
    format_version: str
    rows: list[RosterRow]
    sweeps: dict
    elapsed_ms: float

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(asdict(self), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        d = json.loads(text)
        if d.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported report format {d.get('format_version')!r}")
        return cls(d["format_version"], [RosterRow(**r) for r in d["rows"]], d["sweeps"], d["elapsed_ms"])

    @property
    def exit_code(self) -> int:
        if any(r.error for r in self.rows):
            return 2
        if any(r.discrepancy or not r.agreement for r in self.rows):
            return 1
        if not all(v.get("ok", True) for v in self.sweeps.get("checks", {}).values()):
            return 1
        return 0

    def table(self) -> str:
        head = ["group", "|V|", "|Sp|", "splits", "predicted", "agree", "ms", "note"]
        lines = [head]
        for r in self.rows:
            note = "DISCREPANCY" if r.discrepancy else (r.error or "")
            lines.append([
                r.group, str(r.v_order or "-"), str(r.sp_order or "-"),
                {True: "yes", False: "no", None: "?"}[r.splits],
                {True: "yes", False: "no", None: "?"}[r.theorem_prediction],
                {True: "yes", False: "no", None: "?"}[r.agreement],
                f"{r.timings_ms.get('total_ms', 0):.0f}", note,
            ])
        widths = [max(len(row[i]) for row in lines) for i in range(len(head))]
        out = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in lines]
        for name, v in self.sweeps.get("checks", {}).items():
            out.append(f"{name}: {'ok' if v.get('ok') else 'FAILED'}")
        return "\n".join(out)


def run_one(spec: str, cfg: RunConfig) -> RosterRow:
    try:
        A = parse_group_spec(spec)
    except (GroupSpecError, ValueError) as e:
        return RosterRow(spec, None, None, None, None, None, False, {}, {}, None, None, f"parse error: {e}")
    try:
        v = split_check(A, oracle=cfg.oracle, budget=cfg.budget())
    except Exception as e:          # a failing row is recorded, the run continues
        return RosterRow(A.spec(), A.size ** 2, None, None, A.size % 4 != 0, None, False, {}, {},
                         None, None, f"{type(e).__name__}: {e}")
    rec = _jsonable(v.record())
    return RosterRow(
        group=rec["group"], v_order=rec["v_order"], sp_order=rec["sp_order"], splits=rec["splits"],
        theorem_prediction=rec["theorem_prediction"], agreement=rec["agreement"],
        discrepancy=rec["discrepancy"], oracles=rec["oracles"], timings_ms=rec["timings"],
        witness_digest=rec["witness_digest"], homomorphism=rec["homomorphism"], error=rec["error"],
    )


def run_sweeps(cfg: RunConfig) -> dict:
    from .cyclic import constraint_report, parity_constraint_check, reference_identity_holds, residual_sweep
    from .symplectic import tambara_check
    from .weyl import check_weyl_relations

    checks: dict = {}
    for spec in cfg.tambara:
        r = tambara_check(parse_group_spec(spec))
        checks[f"tambara {spec}"] = {"ok": r.exact, "bil": r.n_bil, "sym": r.n_sym, "alt": r.n_alt}
    for spec in cfg.weyl:
        r = check_weyl_relations(parse_group_spec(spec))
        checks[f"weyl {spec}"] = {"ok": r.ok, "worst_deviation": r.worst}
    for N in cfg.cyclic:
        p = parity_constraint_check(N)
        checks[f"parity N={N}"] = {"ok": p.ok, "pairs": p.pairs, "identity_pairs": len(p.identity_pairs)}
        if N >= 4:
            samples = None if N ** 4 <= 256 else cfg.residual_samples
            s = residual_sweep(N, samples, cfg.seed)
            checks[f"residual N={N}"] = {"ok": s.ok and reference_identity_holds(N), "tuples": s.tuples,
                                         "mode": s.mode}
        c = constraint_report(N)
        expect_empty = N >= 4
        checks[f"constraints N={N}"] = {
            "ok": (not c.intersection) == expect_empty and c.parity_matches_closed_form
            and c.modular_matches_closed_form and c.reference_identity,
            "parity_set": c.parity_set, "modular_set": c.modular_set, "intersection": c.intersection,
        }
    return {"checks": _jsonable(checks)}


def run_roster(cfg: RunConfig | None = None) -> RunReport:
    cfg = cfg or RunConfig()
    t0 = time.monotonic()
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as ex:
            rows = list(ex.map(lambda s: run_one(s, cfg), cfg.roster))
    else:
        rows = [run_one(s, cfg) for s in cfg.roster]
    # the side checks accompany a roster; an empty roster is an empty report
    sweeps = run_sweeps(cfg) if cfg.sweeps and cfg.roster else {"checks": {}}
    return RunReport(FORMAT_VERSION, rows, sweeps, (time.monotonic() - t0) * 1e3)
