"""Compiled inner loop for the all-pairs homomorphism check.

Left multiplication by ``T`` is a permutation ``L_T`` of Sp.  Walking a
spanning tree of the Cayley graph from the identity, ``L_{Tg} = L_T o L_g``
costs one gather per element, after which every pair ``(T, S)`` reads the
index of ``TS`` as ``L_T[S]`` with no search.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _tree_pair_defects(order, depth, via, lmul, table, probe_img, probe_tab, den):
    n_sp = lmul.shape[1]
    n_p = probe_img.shape[1]
    max_depth = 0
    for i in range(order.shape[0]):
        if depth[i] > max_depth:
            max_depth = depth[i]
    stack = np.empty((max_depth + 1, n_sp), dtype=np.int32)
    for s in range(n_sp):
        stack[0, s] = s
    defects = 0
    for i in range(order.shape[0]):
        t = order[i]
        d = depth[i]
        if d > 0:
            parent = stack[d - 1]
            g = lmul[via[i]]
            cur = stack[d]
            for s in range(n_sp):
                cur[s] = parent[g[s]]
        lt = stack[d]
        row_t = table[t]
        for s in range(n_sp):
            ts = lt[s]
            bad = 0
            for q in range(n_p):
                x = np.int64(row_t[probe_img[s, q]]) + np.int64(probe_tab[s, q]) - np.int64(probe_tab[ts, q])
                bad |= (x != 0) & (x != den)
            defects += bad
    return defects


def _spanning_preorder(sp, gens: list[int]):
    """Preorder of a BFS spanning tree over right multiplication by ``gens``.

    Returns ``(order, depth, via)`` where node ``order[i] = parent * gens[via[i]]``.
    """
    n = len(sp)
    rmul = [sp.lookup(sp.perms[:, sp.images[g]]) for g in gens]
    parent = np.full(n, -1, dtype=np.int64)
    via = np.zeros(n, dtype=np.int64)
    root = sp.identity
    parent[root] = root
    frontier = np.array([root])
    while len(frontier):
        nxt = []
        for k, r in enumerate(rmul):
            child = r[frontier]
            fresh = parent[child] < 0
            child, src = child[fresh], frontier[fresh]
            child, first = np.unique(child, return_index=True)
            parent[child] = src[first]
            via[child] = k
            nxt.append(child)
        frontier = np.concatenate(nxt)
    if np.any(parent < 0):
        raise ValueError("generators do not generate the group")
    children: list[list[int]] = [[] for _ in range(n)]
    for c in range(n):
        if c != root:
            children[parent[c]].append(c)
    order, depth, via_o = [], [], []
    stack = [(root, 0)]
    while stack:
        x, d = stack.pop()
        order.append(x)
        depth.append(d)
        via_o.append(via[x])
        stack.extend((c, d + 1) for c in reversed(children[x]))
    return (np.array(order, dtype=np.int64), np.array(depth, dtype=np.int64),
            np.array(via_o, dtype=np.int64))


def pair_defects(sp, table: np.ndarray, probe: np.ndarray, den: int, gens: list[int] | None = None) -> int:
    """Number of ordered pairs ``(T, S)`` where ``s(T) s(S) != s(TS)`` on the probe set."""
    from .symplectic import find_generating_set

    if gens is None:
        gens = find_generating_set(sp)
    if not gens:
        gens = [sp.identity]
    order, depth, via = _spanning_preorder(sp, gens)
    lmul = np.stack([sp.mul_row(g) for g in gens]).astype(np.int32)
    val = np.int8 if den < 64 else np.int64
    tab = np.ascontiguousarray(table % den, dtype=val)
    idx = np.int16 if sp.V.size < 2 ** 15 else np.int32
    out = _tree_pair_defects(
        order, depth, via, lmul, tab,
        np.ascontiguousarray(sp.perms[:, probe], dtype=idx),
        np.ascontiguousarray(tab[:, probe]),
        den,
    )
    return int(out)
