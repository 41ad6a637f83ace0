from __future__ import annotations

import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffsplit.elimination import GF2Eliminator, HowellEliminator, pack_gf2, solve_mod


def brute_solvable(A, b, q):
    n = A.shape[1]
    for x in itertools.product(range(q), repeat=n):
        if not np.any((A @ np.array(x) - b) % q):
            return True
    return False


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]),
       st.integers(1, 3), st.integers(1, 5), st.data())
def test_howell_matches_brute_force(pk, n, m, data):
    p, k = pk
    q = p ** k
    if q ** n > 800:
        n = 1
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n),
                                    min_size=m, max_size=m)))
    b = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=m, max_size=m)))
    el = HowellEliminator(p, k, n)
    ok = el.add_rows(np.hstack([A, b[:, None]]))
    assert ok == brute_solvable(A, b, q)
    if ok:
        x = el.solve()
        assert not np.any((A @ x - b) % q)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 130), st.integers(1, 40), st.data())
def test_gf2_solutions(n, m, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 10 ** 6)))
    A = rng.integers(0, 2, (m, n))
    x0 = rng.integers(0, 2, n)
    b = A @ x0 % 2
    el = GF2Eliminator(n)
    assert el.add_rows(np.hstack([A, b[:, None]]))
    x = el.solve()
    assert not np.any((A @ x - b) % 2)


def test_gf2_inconsistent_row_index():
    el = GF2Eliminator(3)
    assert el.add_dense(np.array([1, 1, 0, 1]))
    assert el.add_dense(np.array([0, 1, 1, 0]))
    assert not el.add_dense(np.array([1, 0, 1, 0]))
    assert el.stats.inconsistent_at == 2 and el.solve() is None


def test_pack_gf2_bit_order():
    w = pack_gf2(np.array([[1, 0, 1] + [0] * 62 + [1]]))
    assert w.shape == (1, 2)
    assert int(w[0, 0]) == 0b101 and int(w[0, 1]) == 0b10


def test_howell_needs_p_multiple_row():
    # 2x = 1 mod 4 is inconsistent; 2x = 2 mod 4 is fine
    el = HowellEliminator(2, 2, 1)
    assert not el.add_dense(np.array([2, 1]))
    el = HowellEliminator(2, 2, 1)
    assert el.add_dense(np.array([2, 2]))
    assert (2 * el.solve()[0]) % 4 == 2


def test_solve_mod_crt():
    # x + y = 5, 2x = 4 over Z/12
    sol = solve_mod([{0: 1, 1: 1}, {0: 2}], [5, 4], 2, 12)
    x, y = sol
    assert (x + y) % 12 == 5 and (2 * x) % 12 == 4
    assert solve_mod([{0: 2}], [1], 1, 6) is None
