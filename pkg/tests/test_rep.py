import json

import numpy as np
import pytest

from jtwist.rep import (
    SeriesMatrix,
    StabilizationError,
    evaluate_tensor,
    export_r_matrix,
    flip_matrix,
    fundamental,
    matrix_checks,
)
from jtwist.twist import canonical_twist
from jtwist.uea import tensor


def _layers(M):
    return [[[str(M.layers[k][i, j]) for j in range(M.n)] for i in range(M.n)]
            for k in range(M.order + 1)]


def test_n2_r_matrix_frozen():
    # rho(E)^2 = 0, so rho(F) = 1 + xi H(x)E and R = (1 + xi E(x)H)(1 - xi H(x)E)
    M = evaluate_tensor(canonical_twist(2, 4).R)
    want = {
        0: np.eye(4, dtype=int),
        1: np.array([[0, -1, 1, 0], [0, 0, 0, -1], [0, 0, 0, 1], [0, 0, 0, 0]]),
        2: np.array([[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
    }
    for k in range(5):
        expected = want.get(k, np.zeros((4, 4), dtype=int))
        assert (M.layers[k] == expected).all(), k


def test_sigma_is_linear_in_fundamental():
    tw = canonical_twist(3, 4)
    rho = fundamental(3)
    s = rho(tw.sigma)
    e13 = rho(tw.gen("E13"))
    assert s == SeriesMatrix([np.zeros((3, 3), dtype=object)] + e13.layers[:4])


def test_generator_matrices():
    tw = canonical_twist(3, 1)
    H = fundamental(3)(tw.gen("H13")).at_zero()
    assert [H[i, i] for i in range(3)] == [1, 0, -1]


def test_kron_leg_order():
    tw = canonical_twist(3, 1)
    a, b = tw.gen("E12"), tw.gen("E23")
    rho = fundamental(3)
    M = evaluate_tensor(tensor(a, b), rho=rho)
    assert M == rho(a).kron(rho(b))
    assert M.conjugate(flip_matrix(3)) == rho(b).kron(rho(a))


@pytest.mark.parametrize("N", [2, 3, 4])
def test_matrix_checks(N):
    r = matrix_checks(N, 4 if N < 4 else 3)
    assert r.passed, r.residual_witness


def test_export_json():
    doc = json.loads(export_r_matrix(3, 3))
    assert doc["size"] == 9 and doc["degree"] == 2
    entries = doc["entries"]
    assert all(len(entries[i][j]) == 3 for i in range(9) for j in range(9))
    assert entries[0][0] == ["1", "0", "0"]


def test_export_needs_stable_order():
    with pytest.raises(StabilizationError, match="increase K"):
        export_r_matrix(3, 1)


def test_series_matrix_arithmetic():
    I = SeriesMatrix.identity(2, 2)
    X = SeriesMatrix.constant([[0, 1], [0, 0]], 2)
    assert (X @ X).is_zero()
    assert I @ X == X and X @ I == X
    assert (I + X) - X == I
    with pytest.raises(ValueError):
        I @ SeriesMatrix.identity(2, 3)
