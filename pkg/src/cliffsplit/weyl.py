"""Floating-point Weyl operators on C[A], checked against the exact phase tables."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .abelian import FinAbGroup
from .symplectic import DoubleSpace, ResourceError

MAX_DIM = 16


@dataclass
class DenseUnitary:
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def unitarity_deviation(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m @ m.conj().T - np.eye(len(m)))))


def _root(num, den) -> np.ndarray:
    return np.exp(2j * np.pi * np.asarray(num, dtype=float) / den)


def weyl_matrix(A: FinAbGroup, u) -> DenseUnitary:
    """``W_u = X_a Z_chi``: ``|b> -> chi(b) |a + b>``."""
    if A.size > MAX_DIM:
        raise ResourceError(f"Weyl matrices need |A| <= {MAX_DIM}, got {A.size}")
    V = DoubleSpace(A)
    r = u if isinstance(u, (int, np.integer)) else V.rank(u)
    coords = V.elems[int(r)]
    m = A.rank
    a, chi = coords[:m], coords[m:]
    mod = np.array(A.orders, dtype=np.int64)
    elems = V.elems[:: A.size, :m]                 # group elements in mixed-radix order
    w = np.ones(m, dtype=np.int64)
    for i in range(m - 2, -1, -1):
        w[i] = w[i + 1] * mod[i + 1]
    target = ((elems + a) % mod) @ w
    vals = _root((elems * chi) @ (V.den // mod), V.den)
    out = np.zeros((A.size, A.size), dtype=complex)
    out[target, np.arange(A.size)] = vals
    return DenseUnitary(out)


@dataclass
class WeylReport:
    group: str
    pairs: int
    product_deviation: float       # max |W_u W_v - beta(u,v) W_{u+v}|
    commutation_deviation: float   # max |W_u W_v - omega(u,v) W_v W_u|
    unitarity_deviation: float
    tolerance: float

    @property
    def worst(self) -> float:
        return max(self.product_deviation, self.commutation_deviation, self.unitarity_deviation)

    @property
    def ok(self) -> bool:
        return self.worst < self.tolerance


def check_weyl_relations(A: FinAbGroup, tolerance: float = 1e-12) -> WeylReport:
    V = DoubleSpace(A)
    Ws = np.stack([weyl_matrix(A, r).matrix for r in range(V.size)])
    beta = _root(V.beta_table, V.den)
    omega = _root(V.omega_table, V.den)
    add = V.add_table
    eye = np.eye(A.size)
    uni = float(np.max(np.abs(np.einsum("kij,klj->kil", Ws, Ws.conj()) - eye)))
    prod_dev = comm_dev = 0.0
    for u in range(V.size):
        left = np.einsum("ij,vjk->vik", Ws[u], Ws)            # W_u W_v for all v
        right = np.einsum("vij,jk->vik", Ws, Ws[u])           # W_v W_u
        prod_dev = max(prod_dev, float(np.max(np.abs(left - beta[u][:, None, None] * Ws[add[u]]))))
        comm_dev = max(comm_dev, float(np.max(np.abs(left - omega[u][:, None, None] * right))))
    return WeylReport(A.spec(), V.size ** 2, prod_dev, comm_dev, uni, tolerance)
