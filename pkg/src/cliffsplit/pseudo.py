"""The Clifford group in the pair model: elements ``(T, lam)`` under the twisted product.

Phase functions are dense integer tables over ``V.den``.  A ``Section`` stores
one phase table per element of an enumerated ``SymplecticGroup``, row ``k``
belonging to ``sp.maps[k]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .abelian import FinAbGroup, Phase
from .symplectic import (
    DoubleSpace,
    DoubleSplit,
    EndoMap,
    ResourceError,
    SymplecticGroup,
    is_symplectic,
)


class PhaseFn:
    """A map ``V -> Q/Z`` stored as numerators over ``V.den``, indexed by rank."""

    def __init__(self, V: DoubleSpace, table):
        t = np.asarray(table, dtype=np.int64) % V.den
        if t.shape != (V.size,):
            raise ValueError(f"phase table needs {V.size} entries, got {t.shape}")
        if t[0] != 0:
            raise ValueError("phase functions must vanish at 0")
        t.setflags(write=False)
        self.V = V
        self.table = t

    def __call__(self, u) -> Phase:
        r = u if isinstance(u, (int, np.integer)) else self.V.rank(u)
        return self.V.phase(self.table[int(r)])

    def __eq__(self, other) -> bool:
        return isinstance(other, PhaseFn) and self.V == other.V and np.array_equal(self.table, other.table)

    def __add__(self, other: PhaseFn) -> PhaseFn:
        return PhaseFn(self.V, self.table + other.table)

    def __sub__(self, other: PhaseFn) -> PhaseFn:
        return PhaseFn(self.V, self.table - other.table)

    def is_zero(self) -> bool:
        return not self.table.any()

    def is_additive(self) -> bool:
        t = self.table
        return not np.any((t[self.V.add_table] - t[:, None] - t[None, :]) % self.V.den)

    @classmethod
    def zero(cls, V: DoubleSpace) -> PhaseFn:
        return cls(V, np.zeros(V.size, dtype=np.int64))

    def __repr__(self) -> str:
        return f"PhaseFn({self.V.base.spec()}, den={self.V.den})"


@dataclass(frozen=True, eq=False)
class CliffordElem:
    T: EndoMap
    lam: PhaseFn

    @property
    def V(self) -> DoubleSpace:
        return self.T.V

    def __eq__(self, other) -> bool:
        return isinstance(other, CliffordElem) and self.T == other.T and self.lam == other.lam

    def __hash__(self) -> int:
        return hash((self.T.key, self.lam.table.tobytes()))

    def __mul__(self, other: CliffordElem) -> CliffordElem:
        return twisted_mul(self, other)

    def is_kernel(self) -> bool:
        return bool(np.array_equal(self.T.perm, np.arange(self.V.size)))

    @classmethod
    def identity(cls, V: DoubleSpace) -> CliffordElem:
        return cls(EndoMap.identity(V), PhaseFn.zero(V))


def coboundary_defect(V: DoubleSpace, perm: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """``lam(u+v) - lam(u) - lam(v) - beta(Tu,Tv) + beta(u,v)`` over all pairs (numerators)."""
    b = V.beta_table
    lhs = lam[V.add_table] - lam[:, None] - lam[None, :]
    rhs = b[np.ix_(perm, perm)] - b
    return (lhs - rhs) % V.den


def check_coboundary(V: DoubleSpace, T: EndoMap, lam: PhaseFn) -> bool:
    return not coboundary_defect(V, T.perm, lam.table).any()


def is_valid(x: CliffordElem) -> bool:
    return check_coboundary(x.V, x.T, x.lam)


def twisted_mul(x: CliffordElem, y: CliffordElem) -> CliffordElem:
    """``(T, lam) (S, mu) = (TS, u -> lam(Su) + mu(u))``."""
    if x.V != y.V:
        raise ValueError("elements over different groups")
    return CliffordElem(x.T @ y.T, PhaseFn(x.V, x.lam.table[y.T.perm] + y.lam.table))


def clifford_inverse(x: CliffordElem) -> CliffordElem:
    V = x.V
    inv_perm = np.argsort(x.T.perm)
    Tinv = EndoMap.from_images(V, inv_perm[V.basis])
    return CliffordElem(Tinv, PhaseFn(V, -x.lam.table[inv_perm]))


def kernel_elem(V: DoubleSpace, v) -> CliffordElem:
    """``nu(v) = (id, kappa(v))``."""
    r = v if isinstance(v, (int, np.integer)) else V.rank(v)
    return CliffordElem(EndoMap.identity(V), PhaseFn(V, V.omega_table[int(r)]))


# --- particular solutions ---------------------------------------------------


def _quadratic_lambda(V: DoubleSpace, perm: np.ndarray) -> np.ndarray:
    """Quadratic refinement of ``b(u,v) = beta(Tu,Tv) - beta(u,v)`` on canonical coordinates.

    ``lam(u) = sum_{i<j} n_i n_j b_ij + sum_i [C(n_i, 2) b_ii + n_i c_i]`` with
    ``c_i = b_ii / 2`` on even factors, which absorbs the wraparound at ``n_i = d_i``.
    """
    b = V.beta_table
    g = V.basis
    bm = (b[np.ix_(perm[g], perm[g])] - b[np.ix_(g, g)]) % V.den
    n = V.elems
    corr = np.array(
        [bm[i, i] // 2 if d % 2 == 0 else 0 for i, d in enumerate(V.moduli)], dtype=np.int64
    )
    quad = np.einsum("ui,ij,uj->u", n, np.triu(bm, 1), n)
    diag = (n * (n - 1) // 2) @ np.diagonal(bm)
    return (quad + diag + n @ corr) % V.den


def solve_lambda(V: DoubleSpace, perm: np.ndarray) -> np.ndarray | None:
    """Solve the coboundary condition for ``lam`` as a linear system over Z/den.

    Uses the equations with ``v`` a basis vector, which pin ``lam`` down to a
    character; the caller re-checks the full condition.  ``None`` if inconsistent.
    """
    from .elimination import solve_mod

    b = V.beta_table
    rows = []
    rhs = []
    add = V.add_table
    for j, g in enumerate(V.basis):
        for u in range(V.size):
            row = {}
            for col, c in ((int(add[u, g]), 1), (u, -1), (int(g), -1)):
                row[col] = row.get(col, 0) + c
            rows.append(row)
            rhs.append(int(b[perm[u], perm[g]] - b[u, g]))
    rows.append({0: 1})
    rhs.append(0)
    sol = solve_mod(rows, rhs, V.size, V.den)
    return None if sol is None else np.asarray(sol, dtype=np.int64) % V.den


def particular_lambda(V: DoubleSpace, T: EndoMap) -> PhaseFn:
    lam = _quadratic_lambda(V, T.perm)
    if coboundary_defect(V, T.perm, lam).any():
        lam = solve_lambda(V, T.perm)
        if lam is None or coboundary_defect(V, T.perm, lam).any():
            raise AssertionError(f"no phase function lifts {T.matrix.tolist()}: lift existence violated")
    return PhaseFn(V, lam)


def all_lifts(V: DoubleSpace, T: EndoMap) -> list[CliffordElem]:
    """The ``|V|`` lifts of ``T``: the particular solution shifted by each ``kappa(v)``."""
    base = particular_lambda(V, T).table
    return [CliffordElem(T, PhaseFn(V, base + V.omega_table[v])) for v in range(V.size)]


# --- sections ---------------------------------------------------------------


class Section:
    """A choice of lift ``(T_k, table[k])`` for every element of ``sp``."""

    def __init__(self, sp: SymplecticGroup, table: np.ndarray, label: str = ""):
        V = sp.V
        table = np.asarray(table, dtype=np.int64) % V.den
        if table.shape != (len(sp), V.size):
            raise ValueError(f"section table must be {(len(sp), V.size)}, got {table.shape}")
        if table[sp.identity].any():
            raise ValueError("section is not normalised at the identity")
        table.setflags(write=False)
        self.sp = sp
        self.V = V
        self.table = table
        self.label = label

    def __len__(self) -> int:
        return len(self.sp)

    def __getitem__(self, k: int) -> CliffordElem:
        return CliffordElem(self.sp.maps[k], PhaseFn(self.V, self.table[k]))

    def lift_of(self, T: EndoMap) -> CliffordElem:
        return self[self.sp.index(T)]

    def coboundary_failures(self, chunk: int = 256) -> np.ndarray:
        """Indices of rows whose phase table violates the coboundary condition."""
        V = self.V
        b = V.beta_table
        add = V.add_table
        bad = []
        for s in range(0, len(self), chunk):
            lam = self.table[s:s + chunk]
            perm = self.sp.perms[s:s + chunk]
            lhs = lam[:, add] - lam[:, :, None] - lam[:, None, :]
            rhs = b[perm[:, :, None], perm[:, None, :]] - b
            rows = np.flatnonzero(((lhs - rhs) % V.den).reshape(len(lam), -1).any(axis=1))
            bad.extend((rows + s).tolist())
        return np.array(bad, dtype=np.int64)

    def is_valid(self) -> bool:
        return len(self.coboundary_failures()) == 0

    def corrected(self, cochain: np.ndarray, label: str = "") -> Section:
        """The section ``T -> nu(-c(T)) s(T)``: phase ``lam_T(u) - omega(c(T), T u)``."""
        om = self.V.omega_table
        shift = om[np.asarray(cochain)[:, None], self.sp.perms]
        return Section(self.sp, self.table - shift, label=label or self.label + "+corrected")


@dataclass
class HomomorphismReport:
    pairs_checked: int
    defects: int
    probe: str          # "all" or "basis": which u are evaluated per pair
    invalid_elements: int

    @property
    def ok(self) -> bool:
        return self.defects == 0 and self.invalid_elements == 0


def verify_homomorphism(section: Section, full_probe_budget: int = 500_000_000) -> HomomorphismReport:
    """Check ``s(T) s(S) = s(TS)`` over every ordered pair of ``Sp``.

    Each pair compares the phase functions at every ``u`` when the work fits
    ``full_probe_budget``; otherwise only on the basis of ``V``, which is
    exhaustive because the defect is a character once every row is a valid lift.
    """
    from ._kernels import pair_defects

    sp, V = section.sp, section.V
    invalid = len(section.coboundary_failures())
    n = len(sp)
    if n * n * V.size <= full_probe_budget:
        probe, mode = np.arange(V.size, dtype=np.int64), "all"
    else:
        probe, mode = V.basis.astype(np.int64), "basis"
    defects = pair_defects(sp, section.table, probe, V.den)
    return HomomorphismReport(pairs_checked=n * n, defects=int(defects), probe=mode,
                              invalid_elements=invalid)


def is_homomorphic(section: Section) -> bool:
    return verify_homomorphism(section).ok


def particular_section(sp: SymplecticGroup) -> Section:
    V = sp.V
    table = np.empty((len(sp), V.size), dtype=np.int64)
    for k, T in enumerate(sp.maps):
        table[k] = particular_lambda(V, T).table
    table[sp.identity] = 0
    return Section(sp, table, label="particular")


def odd_section(A: FinAbGroup | SymplecticGroup) -> Section:
    """``lam_T(u) = ((beta(Tu,Tu) - beta(u,u)))^(1/2)`` with the odd-order square root."""
    sp = A if isinstance(A, SymplecticGroup) else SymplecticGroup.enumerate(DoubleSpace(A))
    V = sp.V
    if V.base.size % 2 == 0:
        raise ValueError(f"odd_section needs |A| odd, got {V.base.size}")
    e = V.exponent
    d = V.beta_diag
    # beta values are multiples of 2 over den = 2e; halve in Z/e with 2^-1
    x = ((d[sp.perms] - d[None, :]) % V.den) // 2
    half = (x * pow(2, -1, e)) % e if e > 1 else np.zeros_like(x)
    return Section(sp, 2 * half, label="odd")


# --- functoriality ----------------------------------------------------------


def _scale(table: np.ndarray, den_from: int, den_to: int) -> np.ndarray:
    if den_to % den_from == 0:
        return table * (den_to // den_from)
    f = den_from // den_to
    if den_from % den_to or np.any(table % f):
        raise AssertionError(f"phase values do not fit denominator {den_to}")
    return table // f


def coprime_compose(sec_b: Section, sec_c: Section, split: DoubleSplit,
                    sp_a: SymplecticGroup | None = None) -> Section:
    """The section ``T_B (+) T_C -> (T_B (+) T_C, lam_B (+) lam_C)`` over ``A = B (+) C``."""
    if math.gcd(split.B.size, split.C.size) != 1:
        raise ValueError("coprime_compose needs coprime orders")
    if sec_b.V != split.VB or sec_c.V != split.VC:
        raise ValueError("sections do not match the split")
    sp_a = sp_a or SymplecticGroup.enumerate(split.VA)
    VA = split.VA
    table = np.empty((len(sp_a), VA.size), dtype=np.int64)
    for k in range(len(sp_a)):
        pb, pc = split.split_perm(sp_a.perms[k])
        ib = sec_b.sp.index_of_images(pb[split.VB.basis])
        ic = sec_c.sp.index_of_images(pc[split.VC.basis])
        lb = _scale(sec_b.table[ib], split.VB.den, VA.den)
        lc = _scale(sec_c.table[ic], split.VC.den, VA.den)
        table[k] = lb[split.to_b] + lc[split.to_c]
    return Section(sp_a, table, label=f"({sec_b.label})+({sec_c.label})")


def embed_clifford(x: CliffordElem, split: DoubleSplit) -> CliffordElem:
    """``(S, mu) -> (S (+) id, (v_B, v_C) -> mu(v_B))`` into the Clifford group of ``B (+) C``."""
    if x.V != split.VB:
        raise ValueError("element does not live over the B summand")
    ident_c = np.arange(split.VC.size)
    perm = split.join_perm(x.T.perm, ident_c)
    T = EndoMap.from_images(split.VA, perm[split.VA.basis])
    lam = _scale(x.lam.table, split.VB.den, split.VA.den)[split.to_b]
    return CliffordElem(T, PhaseFn(split.VA, lam))


def restrict_section(sec_a: Section, split: DoubleSplit, sp_b: SymplecticGroup | None = None,
                     check: bool = True) -> Section:
    """Pull a splitting over ``A = B (+) C`` back to ``B`` along ``S -> S (+) id``."""
    if sec_a.V != split.VA:
        raise ValueError("section does not live over the split's ambient group")
    if check and not verify_homomorphism(sec_a).ok:
        raise ValueError("restrict_section needs a homomorphic section")
    sp_b = sp_b or SymplecticGroup.enumerate(split.VB)
    VB = split.VB
    ident_c = np.arange(split.VC.size)
    on_b = split.b_part_ranks()
    table = np.empty((len(sp_b), VB.size), dtype=np.int64)
    for k in range(len(sp_b)):
        perm = split.join_perm(sp_b.perms[k], ident_c)
        ka = sec_a.sp.index_of_images(perm[split.VA.basis])
        table[k] = _scale(sec_a.table[ka][on_b], split.VA.den, VB.den)
    return Section(sp_b, table, label=f"restricted({sec_a.label})")


def lift_of_map(V: DoubleSpace, T: EndoMap) -> CliffordElem:
    if not is_symplectic(V, T):
        raise ValueError("map is not symplectic")
    return CliffordElem(T, particular_lambda(V, T))
