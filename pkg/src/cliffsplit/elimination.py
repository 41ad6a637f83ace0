"""Streaming linear elimination over Z/p^k, with a bit-packed path for GF(2).

Rows arrive one at a time (or in batches) and only the pivot rows are
retained.  Over Z/p^k a pivot row is scaled so its leading entry is a power of
``p``; whenever a row with leading entry ``p^j`` (``j > 0``) enters the basis,
``p^(k-j)`` times that row is streamed back in.  That keeps the basis in Howell
form, so an inconsistent system always surfaces as a row ``0 = r`` with
``r != 0`` and back-substitution never hits an indivisible pivot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import sympy
from numba import njit

from .symplectic import ResourceError


@dataclass
class EliminationStats:
    rows_seen: int = 0
    rank: int = 0
    inconsistent_at: int | None = None   # index of the streamed row that exposed 0 = r


@njit(cache=True)
def _inv_mod(a, m):
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    return s0 % m


@njit(cache=True)
def _howell_add(piv, lead, row, p, k, q, pk, stack):
    """Reduce one row into the basis.  Returns 0, or -1 on ``0 = r``, -2 on stack overflow."""
    n = piv.shape[0]
    for c in range(n + 1):
        stack[0, c] = row[c] % q
    top = 1
    while top > 0:
        top -= 1
        r = stack[top].copy()
        c = 0
        while True:
            while c < n and r[c] == 0:
                c += 1
            if c == n:
                if r[n] != 0:
                    return -1
                break
            val = r[c]
            j = 0
            while val % p == 0:
                val //= p
                j += 1
            if val != 1:
                u = _inv_mod(val, q)
                for t in range(c, n + 1):
                    r[t] = (r[t] * u) % q
            i = lead[c]
            if i >= 0 and i <= j:
                f = pk[j - i]
                for t in range(c, n + 1):
                    r[t] = (r[t] - f * piv[c, t]) % q
                c += 1
                continue
            if i >= 0:
                # the new row has the smaller valuation and takes over column c
                if top >= stack.shape[0]:
                    return -2
                f = pk[i - j]
                for t in range(n + 1):
                    stack[top, t] = (piv[c, t] - f * r[t]) % q
                top += 1
            for t in range(n + 1):
                piv[c, t] = r[t]
            lead[c] = j
            if j > 0:
                if top >= stack.shape[0]:
                    return -2
                f = pk[k - j]
                for t in range(n + 1):
                    stack[top, t] = (r[t] * f) % q
                top += 1
            break
    return 0


@njit(cache=True)
def _howell_add_batch(piv, lead, rows, p, k, q, pk, stack):
    for i in range(rows.shape[0]):
        rc = _howell_add(piv, lead, rows[i], p, k, q, pk, stack)
        if rc != 0:
            return i, rc
    return -1, 0


class HowellEliminator:
    """Incremental row reduction of ``[A | b]`` over ``Z/p^k`` with ``n`` unknowns."""

    def __init__(self, p: int, k: int, n: int, memory_budget: int = 512 * 2 ** 20, name: str = ""):
        need = n * (n + 1) * 8
        if need > memory_budget:
            raise ResourceError(
                f"elimination over Z/{p}^{k}{' for ' + name if name else ''} needs ~{need >> 20} MiB "
                f"of pivot rows, budget {memory_budget >> 20} MiB"
            )
        self.p, self.k, self.n = p, k, n
        self.q = p ** k
        self.piv = np.zeros((n, n + 1), dtype=np.int64)
        self.lead = np.full(n, -1, dtype=np.int64)
        self._pk = np.array([p ** j for j in range(k + 1)], dtype=np.int64)
        self._stack = np.zeros((4 * k + 8, n + 1), dtype=np.int64)
        self.stats = EliminationStats()

    @property
    def consistent(self) -> bool:
        return self.stats.inconsistent_at is None

    def _after(self, bad: int, rc: int, count: int) -> bool:
        if rc == -2:
            raise AssertionError("Howell elimination stack overflow")
        self.stats.rank = int(np.count_nonzero(self.lead >= 0))
        if bad >= 0:
            self.stats.inconsistent_at = self.stats.rows_seen + bad
            self.stats.rows_seen += bad + 1
            return False
        self.stats.rows_seen += count
        return True

    def add_rows(self, rows: np.ndarray) -> bool:
        """Stream a 2-D block of augmented rows (width ``n + 1``).  False once inconsistent."""
        if not self.consistent:
            return False
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        bad, rc = _howell_add_batch(self.piv, self.lead, rows, self.p, self.k, self.q, self._pk, self._stack)
        return self._after(int(bad), int(rc), len(rows))

    def add_dense(self, row: np.ndarray) -> bool:
        return self.add_rows(np.asarray(row, dtype=np.int64)[None, :])

    def add_sparse(self, cols, vals, rhs: int) -> bool:
        row = np.zeros(self.n + 1, dtype=np.int64)
        np.add.at(row, np.asarray(cols, dtype=np.int64), np.asarray(vals, dtype=np.int64))
        row[self.n] = rhs
        return self.add_dense(row)

    def solve(self) -> np.ndarray | None:
        """A solution mod ``p^k`` (free unknowns 0), or None if inconsistent."""
        if not self.consistent:
            return None
        q, n = self.q, self.n
        x = np.zeros(n, dtype=np.int64)
        for c in np.flatnonzero(self.lead >= 0)[::-1]:
            r = self.piv[c]
            j = int(self.lead[c])
            resid = int((r[n] - r[c + 1:n] @ x[c + 1:n]) % q)
            if resid % self.p ** j:
                raise AssertionError("Howell back-substitution met an indivisible pivot")
            x[c] = (resid // self.p ** j) % q
        return x


@njit(cache=True)
def _gf2_add(piv, has, row, n):
    """Fully reduced insertion of one packed row.  0 ok, -1 inconsistent."""
    W = row.shape[0]
    r = row.copy()
    for c in range(n):
        w = c >> 6
        if (r[w] >> np.uint64(c & 63)) & np.uint64(1):
            if has[c]:
                for t in range(w, W):
                    r[t] ^= piv[c, t]
    lowest = -1
    for c in range(n):
        if (r[c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
            lowest = c
            break
    if lowest < 0:
        if (r[n >> 6] >> np.uint64(n & 63)) & np.uint64(1):
            return -1
        return 0
    w0 = lowest >> 6
    b0 = np.uint64(lowest & 63)
    for c in range(n):
        if has[c] and (piv[c, w0] >> b0) & np.uint64(1):
            for t in range(W):
                piv[c, t] ^= r[t]
    for t in range(W):
        piv[lowest, t] = r[t]
    has[lowest] = True
    return 0


@njit(cache=True)
def _gf2_add_batch(piv, has, rows, n):
    for i in range(rows.shape[0]):
        if _gf2_add(piv, has, rows[i], n) != 0:
            return i
    return -1


def pack_gf2(rows: np.ndarray) -> np.ndarray:
    """Pack 0/1 rows (width ``n + 1``) into little-endian uint64 words."""
    rows = np.atleast_2d(np.asarray(rows) & 1).astype(np.uint8)
    words = (rows.shape[1] + 63) // 64
    packed = np.packbits(rows, axis=1, bitorder="little")
    out = np.zeros((rows.shape[0], words * 8), dtype=np.uint8)
    out[:, :packed.shape[1]] = packed
    return out.view(np.uint64)


class GF2Eliminator:
    """Bit-packed reduced row echelon basis over GF(2).

    Bit ``c`` of a row is the coefficient of unknown ``c`` and bit ``n`` the
    right-hand side.  The basis stays fully reduced, so a new row is reduced by
    one XOR per pivot column it touches.
    """

    def __init__(self, n: int, memory_budget: int = 512 * 2 ** 20, name: str = ""):
        self.words = (n + 1 + 63) // 64
        need = n * self.words * 8
        if need > memory_budget:
            raise ResourceError(f"GF(2) elimination{' for ' + name if name else ''} needs ~{need >> 20} MiB")
        self.n = n
        self.piv = np.zeros((n, self.words), dtype=np.uint64)
        self.has = np.zeros(n, dtype=np.bool_)
        self.stats = EliminationStats()

    @property
    def consistent(self) -> bool:
        return self.stats.inconsistent_at is None

    def add_packed(self, rows: np.ndarray) -> bool:
        if not self.consistent:
            return False
        bad = int(_gf2_add_batch(self.piv, self.has, np.ascontiguousarray(rows, dtype=np.uint64), self.n))
        self.stats.rank = int(self.has.sum())
        if bad >= 0:
            self.stats.inconsistent_at = self.stats.rows_seen + bad
            self.stats.rows_seen += bad + 1
            return False
        self.stats.rows_seen += len(rows)
        return True

    def add_rows(self, rows: np.ndarray) -> bool:
        return self.add_packed(pack_gf2(rows))

    def add_dense(self, row: np.ndarray) -> bool:
        return self.add_rows(np.asarray(row)[None, :])

    def add_sparse(self, cols, vals, rhs: int) -> bool:
        row = np.zeros(self.n + 1, dtype=np.int64)
        np.add.at(row, np.asarray(cols, dtype=np.int64), np.asarray(vals, dtype=np.int64))
        row[self.n] = rhs
        return self.add_dense(row)

    def solve(self) -> np.ndarray | None:
        if not self.consistent:
            return None
        x = np.zeros(self.n, dtype=np.int64)
        w, b = divmod(self.n, 64)
        # fully reduced: the only unknowns left in a pivot row are free ones, set to 0
        x[self.has] = ((self.piv[self.has, w] >> np.uint64(b)) & np.uint64(1)).astype(np.int64)
        return x


def make_eliminator(p: int, k: int, n: int, memory_budget: int = 512 * 2 ** 20, name: str = ""):
    if p == 2 and k == 1:
        return GF2Eliminator(n, memory_budget, name)
    return HowellEliminator(p, k, n, memory_budget, name)


def _crt_combine(parts: list[tuple[np.ndarray, int]]) -> np.ndarray:
    x = np.zeros_like(parts[0][0])
    m = 1
    for xi, qi in parts:
        # x = x mod m, xi mod qi  ->  mod m*qi
        t = ((xi - x) % qi) * pow(m, -1, qi) % qi if qi > 1 else 0
        x = x + m * t
        m *= qi
    return x % m


def solve_mod(rows: list[dict[int, int]], rhs: list[int], ncols: int, modulus: int) -> list[int] | None:
    """Solve a sparse system over ``Z/modulus`` by splitting into prime powers."""
    if modulus == 1:
        return [0] * ncols
    dense = np.zeros((len(rows), ncols + 1), dtype=np.int64)
    for i, (row, b) in enumerate(zip(rows, rhs)):
        for c, v in row.items():
            dense[i, c] += v
        dense[i, ncols] = b
    parts = []
    for p, k in sympy.factorint(modulus).items():
        q = p ** k
        el = make_eliminator(p, k, ncols)
        if not el.add_rows(dense % q):
            return None
        parts.append((el.solve(), q))
    return _crt_combine(parts).tolist()
