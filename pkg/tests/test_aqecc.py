from __future__ import annotations

import numpy as np
import pytest

from qeccforge.aqecc import (
    InvalidPair,
    delta,
    expected_M_bound,
    gamma_vector,
    infidelity_bound,
    monte_carlo,
    pairs_from_code,
)
from qeccforge.classical import hamming_ball_volume, random_code
from qeccforge.construct import build_logical_qubit, build_logical_qudit
from qeccforge.quantum import QuantumCode, uniform_state


def test_steane_gamma(hamming):
    g = gamma_vector(build_logical_qubit(hamming, 3, 3))
    assert set(g.labels[0].split(".")) == {"I"}
    assert g.values[0] == pytest.approx(1)
    assert len(g) == 29
    assert np.allclose(g.values.imag, 0)
    assert np.all(np.abs(g.values) <= 1 + 1e-12)


def test_single_word_pair_gives_raw_phases():
    pair = (uniform_state(0, [(0, 1)]), uniform_state(1, [(1, 0)]))
    # weight-1 Z on either site sees different phases: not a valid pair
    with pytest.raises(InvalidPair):
        gamma_vector(pair, 2, q=2)
    g = gamma_vector(pair, 1, q=2)
    assert list(g.values) == [1]


def test_pair_needs_two_states(cyclic):
    with pytest.raises(InvalidPair):
        gamma_vector(build_logical_qudit(cyclic, 2, 2))


def test_delta_zero_for_one_code(cyclic):
    code = build_logical_qudit(cyclic, 2, 2)
    pairs = [
        QuantumCode(code.q, code.n, 2, 2, (code.states[i], code.states[i + 1])) for i in range(0, code.dimension, 2)
    ]
    gs = [gamma_vector(p) for p in pairs]
    assert delta(gs) == pytest.approx(0, abs=1e-12)
    assert delta([gs[0], gs[0]]) == 0
    with pytest.raises(ValueError):
        delta(gs[:1])


def test_delta_from_disjoint_subcodes():
    code = random_code(2, 6, 60, seed=4)
    ps = pairs_from_code(code, 2)
    assert ps.block_size == 2 * hamming_ball_volume(2, 6, 1)
    gs = [gamma_vector(p, pair_index=i) for i, p in enumerate(ps.pairs)]
    if len(gs) < 2:
        pytest.skip("fewer than two pairs")
    d = delta(gs)
    assert 0 <= d <= 2


def test_expected_M_examples():
    v = hamming_ball_volume(2, 7, 2)
    assert expected_M_bound(1000, 2, 7, 3, 2.0) == 2 * (1000 // (2 * v))
    assert expected_M_bound(2 * v, 2, 7, 3, 0.5) == pytest.approx(2 * 0.25**v)
    assert expected_M_bound(1000, 2, 7, 3, 1e-9) < 1e-100
    with pytest.raises(ValueError):
        expected_M_bound(1000, 2, 7, 3, 0.0)


def test_infidelity_examples():
    assert infidelity_bound(0.0, 2, 7, 3) == 0
    assert infidelity_bound(1e-3, 2, 7, 3) == pytest.approx(1e-3 * 29**4)
    with pytest.raises(ValueError):
        infidelity_bound(-1.0, 2, 7, 3)


def test_monotonicity_grid():
    deltas = np.linspace(0.01, 2.0, 40)
    for q, n, dz in ((2, 7, 3), (3, 5, 2), (4, 6, 2)):
        em = [expected_M_bound(5000, q, n, dz, d) for d in deltas]
        inf = [infidelity_bound(d, q, n, dz) for d in deltas]
        assert all(b >= a for a, b in zip(em, em[1:]))
        assert all(b > a for a, b in zip(inf, inf[1:]))
        ms = [expected_M_bound(m, q, n, dz, 1.0) for m in range(100, 5000, 97)]
        assert all(b >= a for a, b in zip(ms, ms[1:]))


def test_monte_carlo_is_deterministic():
    a = monte_carlo(2, 6, 56, 2, trials=3, seed=9)
    b = monte_carlo(2, 6, 56, 2, trials=3, seed=9)
    assert a == b
    assert len(a) == 3
    for row in a:
        assert row.logical_states == 2 * row.pairs
