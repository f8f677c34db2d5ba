from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeccforge.feasibility import ColumnBlowup, dines_feasible, dines_solve, phase_one


def is_solution(m, x) -> bool:
    x = [Fraction(v) if not isinstance(v, float) else v for v in x]
    if any(v < 0 for v in x) or all(v == 0 for v in x):
        return False
    m = np.asarray(m)
    return all(sum(int(m[i, j]) * x[j] for j in range(m.shape[1])) == 0 for i in range(m.shape[0]))


def test_examples():
    assert dines_feasible(np.array([[1, 2]])) is None
    x = dines_feasible(np.array([[1, -1]]))
    assert x is not None and x[0] == x[1] > 0
    x = dines_feasible(np.array([[1, -1, 0], [0, 1, -1]]))
    assert x[0] == x[1] == x[2] > 0


def test_blocking_row_reported():
    res = dines_solve(np.array([[1, -1], [1, 1]]))
    assert not res.feasible
    assert res.blocking_row is not None


def test_phase_one_examples():
    assert phase_one([[1, 2]]) is None
    assert is_solution([[1, -1, 0], [0, 1, -1]], phase_one([[1, -1, 0], [0, 1, -1]]))


def test_zero_column_is_feasible():
    x = dines_feasible(np.array([[1, 0, 2], [3, 0, -1]]))
    assert x is not None and x[1] > 0


def test_float_input():
    m = np.array([[0.5, -0.25, 0.0], [0.1, 0.1, -0.2]])
    x = dines_feasible(m)
    assert x is not None
    assert np.all(np.asarray(x, dtype=float) >= 0)
    assert np.allclose(m @ np.asarray(x, dtype=float), 0, atol=1e-9)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 6), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_agrees_with_phase_one(r, c, seed):
    m = np.random.default_rng(seed).integers(-1, 2, size=(r, c))
    res = dines_solve(m)
    ref = phase_one(m.tolist())
    assert res.feasible == (ref is not None)
    if res.feasible:
        assert is_solution(m, res.x)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_pruning_does_not_change_answer(r, c, seed):
    m = np.random.default_rng(seed).integers(-2, 3, size=(r, c))
    assert dines_solve(m, prune=True).feasible == dines_solve(m, prune=False, fallback=False).feasible


def test_column_cap_falls_back_or_raises():
    m = np.random.default_rng(0).integers(-1, 2, size=(5, 12))
    res = dines_solve(m, cap=2)
    assert res.feasible == (phase_one(m.tolist()) is not None)
    if res.method == "dines":
        pytest.skip("system solved without exceeding the cap")
    with pytest.raises(ColumnBlowup):
        dines_solve(m, cap=2, fallback=False)
