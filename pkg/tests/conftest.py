from __future__ import annotations

import itertools

import numpy as np
import pytest

from qeccforge.examples import load_input
from qeccforge.quantum import QuantumCode


@pytest.fixture(scope="session")
def hamming():
    return load_input("hamming743.txt")


@pytest.fixture(scope="session")
def c633():
    return load_input("c633.txt")


@pytest.fixture(scope="session")
def cyclic():
    return load_input("cyclic482.txt")


def _exponents(q: int, n: int, w_max: int):
    for w in range(w_max + 1):
        for sup in itertools.combinations(range(n), w):
            for vals in itertools.product(range(1, q), repeat=w):
                v = [0] * n
                for i, x in zip(sup, vals):
                    v[i] = x
                yield tuple(v)


def dense_kl_violation(code: QuantumCode, d_x: int, d_z: int) -> float:
    """Worst KL violation from full state vectors; shares no code with the verifier."""
    q, n = code.q, code.n
    dim = q**n
    digits = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64)
    weights = q ** np.arange(n - 1, -1, -1)
    vecs = np.zeros((code.dimension, dim), dtype=complex)
    for i, st in enumerate(code.states):
        for w, amp in st.items():
            vecs[i, int(np.dot(np.mod(w, q), weights))] += amp
    worst = 0.0
    omega = np.exp(2j * np.pi / q)
    for a in _exponents(q, n, d_x - 1):
        # X^a |c> = |c - a>: new index of each basis state
        target = np.mod(digits - np.array(a), q) @ weights
        for b in _exponents(q, n, d_z - 1):
            phase = omega ** np.mod(digits @ np.array(b), q)
            applied = np.zeros_like(vecs)
            applied[:, target] = vecs * phase
            g = vecs.conj() @ applied.T
            dev = np.abs(g - np.eye(code.dimension) * np.trace(g) / code.dimension).max()
            worst = max(worst, float(dev))
    return worst


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
