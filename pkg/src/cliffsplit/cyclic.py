"""Lifts of the generators ``t, s`` of SL(2, Z_N) for ``N = 2^k`` and the two relations.

Coordinates of ``V = Z_N (+) Z_N`` are ``(a, p)`` with ``p`` the character
coordinate, so ``beta((a,p),(b,q)) = pb/N``.  Phases are numerators over
``2N`` with ``a, p`` taken in ``{0, .., N-1}`` before squaring.

Characters of ``V`` are parametrised by the dot product,
``chi_v(a, p) = (v_1 a + v_2 p) / N``; under that convention
``chi_v(S u) = chi_{S^T v}(u)``.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from .abelian import Phase, make_group
from .pseudo import CliffordElem, PhaseFn, check_coboundary, clifford_inverse, twisted_mul
from .symplectic import DoubleSpace, EndoMap, cyclic_generators


def _check_power_of_two(N: int):
    if N < 2 or N & (N - 1):
        raise ValueError(f"N must be a power of two >= 2, got {N}")


def cyclic_space(N: int) -> DoubleSpace:
    return DoubleSpace(make_group([N]))


@dataclass(frozen=True)
class LiftParams:
    N: int
    x: int = 0
    y: int = 0
    z: int = 0
    w: int = 0

    def __post_init__(self):
        _check_power_of_two(self.N)
        for name in ("x", "y", "z", "w"):
            v = getattr(self, name)
            if not 0 <= v < self.N:
                raise ValueError(f"{name} = {v} is outside 0..{self.N - 1}")


def _coords(V: DoubleSpace) -> tuple[np.ndarray, np.ndarray]:
    e = V.elems
    return e[:, 0], e[:, 1]


def lift_t(N: int, x: int, y: int) -> CliffordElem:
    """``lam_t(a, p) = p^2/(2N) + (x a + y p)/N``."""
    _check_power_of_two(N)
    V = cyclic_space(N)
    a, p = _coords(V)
    t, _ = cyclic_generators(V)
    lam = PhaseFn(V, p * p + 2 * (x * a + y * p))
    if not check_coboundary(V, t, lam):
        raise AssertionError("lift of t violates the coboundary condition")
    return CliffordElem(t, lam)


def lift_s(N: int, z: int, w: int) -> CliffordElem:
    """``lam_s(a, p) = -a p/N + (z a + w p)/N``."""
    _check_power_of_two(N)
    V = cyclic_space(N)
    a, p = _coords(V)
    _, s = cyclic_generators(V)
    lam = PhaseFn(V, -2 * a * p + 2 * (z * a + w * p))
    if not check_coboundary(V, s, lam):
        raise AssertionError("lift of s violates the coboundary condition")
    return CliffordElem(s, lam)


def power(x: CliffordElem, n: int) -> CliffordElem:
    if n < 1:
        raise ValueError("power needs n >= 1")
    out = x
    for _ in range(n - 1):
        out = twisted_mul(out, x)
    return out


def power_phase(lift: CliffordElem, n: int) -> PhaseFn:
    """Phase table of the ``n``-th twisted power, by repeated multiplication."""
    return power(lift, n).lam


def lambda_closed_form(N: int, x: int) -> np.ndarray:
    """``(-1)^{p(1+x)}`` as numerators over ``2N``."""
    V = cyclic_space(N)
    _, p = _coords(V)
    return (N * ((p * (1 + x)) % 2)) % (2 * N)


@dataclass
class ParityReport:
    N: int
    pairs: int
    mismatches: list[tuple[int, int]]
    identity_pairs: list[tuple[int, int]]      # (x, y) with t~^N = (I, 1)
    zero_iff_x_odd: bool

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.zero_iff_x_odd


def parity_constraint_check(N: int) -> ParityReport:
    """Brute-force ``t~^N`` for every ``(x, y)`` against the closed form."""
    _check_power_of_two(N)
    mismatches, ident = [], []
    for x, y in itertools.product(range(N), repeat=2):
        P = power(lift_t(N, x, y), N)
        if not P.is_kernel():
            raise AssertionError("t^N is not the identity in SL(2, Z_N)")
        if not np.array_equal(P.lam.table, lambda_closed_form(N, x)):
            mismatches.append((x, y))
        if P.lam.is_zero():
            ident.append((x, y))
    zero_iff = sorted(ident) == [(x, y) for x in range(N) for y in range(N) if x % 2 == 1]
    return ParityReport(N, N * N, mismatches, ident, zero_iff)


def v_w_closed_form(N: int, x: int, y: int, z: int, w: int) -> tuple[int, int]:
    return ((-z - w - 2 * y) % N, (-z - w - 2 * y + 2 * x) % N)


def character_param(lam: PhaseFn) -> tuple[int, int]:
    """``v`` with ``lam = chi_v``; raises if ``lam`` is not a character of that form."""
    V = lam.V
    N = V.moduli[0]
    if not lam.is_additive():
        raise AssertionError("phase of W is not a character")
    n1, n2 = int(lam.table[V.rank((1, 0))]), int(lam.table[V.rank((0, 1))])
    if n1 % 2 or n2 % 2:
        raise AssertionError("character values are not multiples of 1/N")
    return (n1 // 2) % N, (n2 // 2) % N


def _char_calculus(N: int, x: int, y: int, z: int, w: int) -> tuple[int, int]:
    """``v_W`` from the transpose rules ``(H,chi_a)(K,chi_b) = (HK, chi_{K^T a + b})``."""
    t = np.array([[1, 1], [0, 1]])
    s = np.array([[0, -1], [1, 0]])
    g = s @ t
    v_st = t.T @ np.array([z, w]) + np.array([x, y])
    gt = g.T
    v_st3 = (gt @ gt + gt + np.eye(2, dtype=int)) @ v_st
    v_s2 = (s.T + np.eye(2, dtype=int)) @ np.array([z, w])
    # (st)^3 = s^2 = -I, and (H, chi_a) (H, chi_b)^-1 = (I, chi_{-H^-T (b - a)}) with H^-T = -I
    v = -v_st3 + v_s2
    return int(v[0] % N), int(v[1] % N)


def word_w(N: int, x: int, y: int, z: int, w: int) -> CliffordElem:
    """``W = (s~ t~)^3 s~^-2`` by twisted multiplication."""
    st = twisted_mul(lift_s(N, z, w), lift_t(N, x, y))
    s2 = power(lift_s(N, z, w), 2)
    return twisted_mul(power(st, 3), clifford_inverse(s2))


def residual_character(N: int, x: int, y: int, z: int, w: int) -> tuple[int, int]:
    """``v_W``, computed three ways and asserted equal."""
    LiftParams(N, x, y, z, w)
    W = word_w(N, x, y, z, w)
    if not W.is_kernel():
        raise AssertionError("symplectic part of W is not the identity")
    direct = character_param(W.lam)
    closed = v_w_closed_form(N, x, y, z, w)
    calc = _char_calculus(N, x, y, z, w)
    if not direct == closed == calc:
        raise AssertionError(
            f"v_W mismatch at N={N}, (x,y,z,w)={(x, y, z, w)}: direct {direct}, closed {closed}, calculus {calc}"
        )
    return closed


def reference_identity_holds(N: int) -> bool:
    """``(s~_0 t~_0)^3 = s~_0^2`` for the lifts with all parameters zero."""
    s0, t0 = lift_s(N, 0, 0), lift_t(N, 0, 0)
    return power(twisted_mul(s0, t0), 3) == power(s0, 2)


@dataclass
class ResidualSweep:
    N: int
    tuples: int
    mismatches: int
    mode: str
    seed: int | None

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def residual_sweep(N: int, samples: int | None = None, seed: int = 0) -> ResidualSweep:
    """Check ``v_W`` on all ``N^4`` tuples, or ``samples`` seeded ones."""
    if samples is None:
        tuples = list(itertools.product(range(N), repeat=4))
        mode, sd = "exhaustive", None
    else:
        rng = np.random.default_rng(seed)
        tuples = [tuple(int(v) for v in row) for row in rng.integers(0, N, (samples, 4))]
        mode, sd = "sampled", seed
    bad = 0
    for tup in tuples:
        try:
            residual_character(N, *tup)
        except AssertionError:
            bad += 1
    return ResidualSweep(N, len(tuples), bad, mode, sd)


@dataclass
class ConstraintReport:
    N: int
    parity_set: list[int]           # x with t~^N = (I, 1), by brute force
    modular_set: list[int]          # x admitting (y, z, w) with (s~t~)^3 = s~^2, by brute force
    intersection: list[int]
    parity_matches_closed_form: bool
    modular_matches_closed_form: bool
    reference_identity: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def constraint_report(N: int) -> ConstraintReport:
    _check_power_of_two(N)
    parity = sorted({x for x, _ in parity_constraint_check(N).identity_pairs})
    modular = set()
    for x in range(N):
        for y, z, w in itertools.product(range(N), repeat=3):
            if word_w(N, x, y, z, w).lam.is_zero():
                modular.add(x)
                break
    modular = sorted(modular)
    return ConstraintReport(
        N=N,
        parity_set=parity,
        modular_set=modular,
        intersection=sorted(set(parity) & set(modular)),
        parity_matches_closed_form=parity == [x for x in range(N) if x % 2],
        modular_matches_closed_form=modular == [x for x in range(N) if (2 * x) % N == 0],
        reference_identity=reference_identity_holds(N),
    )


def phase_at(lam: PhaseFn, a: int, p: int) -> Phase:
    return lam((a % lam.V.moduli[0], p % lam.V.moduli[1]))
