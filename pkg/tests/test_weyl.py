from __future__ import annotations

import numpy as np
import pytest

from cliffsplit.abelian import make_group
from cliffsplit.symplectic import ResourceError
from cliffsplit.weyl import check_weyl_relations, weyl_matrix


@pytest.mark.parametrize("orders", [[2], [3], [4], [2, 2], [6]])
def test_weyl_relations(orders):
    r = check_weyl_relations(make_group(orders))
    assert r.ok and r.worst < 1e-12 and r.pairs == make_group(orders).size ** 4


def test_weyl_matrix_action():
    A = make_group([3])
    W = weyl_matrix(A, (1, 0)).matrix              # pure shift
    assert np.allclose(W, np.roll(np.eye(3), 1, axis=0))
    Z = weyl_matrix(A, (0, 1)).matrix              # pure phase
    assert np.allclose(np.diag(Z), np.exp(2j * np.pi * np.arange(3) / 3))


def test_weyl_too_large():
    with pytest.raises(ResourceError):
        weyl_matrix(make_group([17]), 0)
