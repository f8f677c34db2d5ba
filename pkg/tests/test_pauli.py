from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qeccforge.classical import hamming_ball_volume
from qeccforge.pauli import (
    DiagonalPauli,
    PauliLabel,
    enumerate_diagonal,
    exponent_vectors,
    expectation_diagonal,
    expectation_general,
    wt_x,
    wt_z,
)
from qeccforge.quantum import LogicalState
from qeccforge.construct import build_logical_qubit


def test_weights():
    ident = PauliLabel.identity(3, 2)
    assert (wt_x(ident), wt_z(ident)) == (0, 0)
    p = PauliLabel((1, 0, 1), (0, 0, 0), 2)
    assert (wt_x(p), wt_z(p)) == (2, 0)
    p = PauliLabel((0, 0, 0, 0), (3, 0, 0, 2), 5)
    assert (wt_x(p), wt_z(p)) == (0, 2)


def test_labels_reduce_mod_q():
    assert PauliLabel((3, -1), (5, 0), 2) == PauliLabel((1, 1), (1, 0), 2)


def test_enumeration_counts():
    assert len(list(enumerate_diagonal(2, 7, 2))) == 28
    assert len(list(enumerate_diagonal(5, 8, 2))) == 480
    assert list(enumerate_diagonal(2, 3, 0)) == []


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [1, 3, 5, 8])
@pytest.mark.parametrize("w", [0, 1, 2, 3])
def test_enumeration_matches_ball_volume(q, n, w):
    if w > n:
        return
    vs = list(exponent_vectors(q, n, w))
    assert len(vs) == hamming_ball_volume(q, n, w) - 1
    assert len(set(vs)) == len(vs)


def test_enumeration_order_is_weight_major():
    vs = list(exponent_vectors(3, 3, 2))
    weights = [sum(1 for x in v if x) for v in vs]
    assert weights == sorted(weights)
    assert vs[:3] == [(1, 0, 0), (2, 0, 0), (0, 1, 0)]


def test_expectation_examples():
    assert expectation_diagonal((1, 0, 1), (0, 0, 0), 2).value == 1
    e = expectation_diagonal((1, 0, 1), (1, 1, 0), 2)
    assert e.k == 1 and e.value == pytest.approx(-1)
    e = expectation_diagonal((1, 1, 0, 0), DiagonalPauli((1, 0, 0, 0), 4))
    assert e.k == 1 and e.re == pytest.approx(0, abs=1e-15) and e.im == pytest.approx(1)


@given(st.integers(2, 7), st.lists(st.integers(-5, 10), min_size=1, max_size=8), st.data())
def test_expectation_is_root_of_unity(q, c, data):
    z = data.draw(st.lists(st.integers(0, q - 1), min_size=len(c), max_size=len(c)))
    e = expectation_diagonal(c, z, q)
    assert 0 <= e.k < q
    assert abs(abs(e.value) - 1) < 1e-14
    if q == 2:
        assert abs(e.im) < 1e-15


def test_expectation_general_on_steane(hamming):
    code = build_logical_qubit(hamming, 3, 3)
    s0, s1 = code.states
    ident = PauliLabel.identity(7, 2)
    assert expectation_general(s0, ident) == pytest.approx(1)
    zz = PauliLabel((0,) * 7, (1, 1, 0, 0, 0, 0, 0), 2)
    assert expectation_general(s0, zz) == pytest.approx(expectation_general(s1, zz))
    x1 = PauliLabel((1, 0, 0, 0, 0, 0, 0), (0,) * 7, 2)
    assert expectation_general(s0, x1, s1) == 0


def test_expectation_general_shift_convention():
    # X^a |c> = |c - a>, so <c - a| X^a |c> = 1
    ket = LogicalState(0, ((2, 0),), (1.0,))
    bra = LogicalState(1, ((1, 0),), (1.0,))
    p = PauliLabel((1, 0), (1, 0), 3)
    assert expectation_general(bra, p, ket) == pytest.approx(np.exp(2j * math.pi * 2 / 3))
