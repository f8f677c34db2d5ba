"""Brute-force Knill-Laflamme check on a finished code.

Only the states are read (never the provenance), so this is an oracle for
every construction. For each Pauli ``P = X^a Z^b`` with ``wt(a) <= d_X - 1`` and
``wt(b) <= d_Z - 1`` it forms the Gram matrix ``G_ij = <i_L|P|j_L>`` and checks
``G = c_P * I``.

Pauli X-parts that map no support word onto another support word give
``G = 0`` for every Z-part; they are counted but not evaluated.
"""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from qeccforge.classical import hamming_ball_volume
from qeccforge.pauli import PauliLabel, exponent_array
from qeccforge.quantum import QuantumCode

DEFAULT_TOL = 1e-8


def max_threads() -> int:
    try:
        return max(1, int(os.environ.get("QECCFORGE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class KLReport:
    passed: bool
    d_x_checked: int
    d_z_checked: int
    paulis_checked: int
    worst_violation: tuple[str, float] | None
    c_values: dict[str, complex] = field(default_factory=dict)
    exact_diagonal: bool = False
    tol: float = DEFAULT_TOL

    def to_json_obj(self, with_c_values: bool = True) -> dict:
        out = {
            "passed": self.passed,
            "d_x_checked": self.d_x_checked,
            "d_z_checked": self.d_z_checked,
            "paulis_checked": self.paulis_checked,
            "worst_violation": None
            if self.worst_violation is None
            else {"pauli": self.worst_violation[0], "magnitude": self.worst_violation[1]},
            "exact_diagonal": self.exact_diagonal,
            "tol": self.tol,
        }
        if with_c_values:
            out["c_values"] = {k: [v.real, v.imag] for k, v in sorted(self.c_values.items())}
        return out

    def summary(self) -> str:
        verdict = "PASSED" if self.passed else "FAILED"
        worst = "none" if self.worst_violation is None else f"{self.worst_violation[1]:.3e} at {self.worst_violation[0]}"
        return (
            f"KL check {verdict}: d_X={self.d_x_checked} d_Z={self.d_z_checked}, "
            f"{self.paulis_checked} Paulis, worst violation {worst}"
        )


def pauli_count(q: int, n: int, d_x: int, d_z: int) -> int:
    return hamming_ball_volume(q, n, d_x - 1) * hamming_ball_volume(q, n, d_z - 1)


def _label(a: np.ndarray, b: np.ndarray, q: int) -> str:
    return str(PauliLabel(tuple(int(x) for x in a), tuple(int(x) for x in b), q))


def _phase_tables(q: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(q)
    return np.cos(2 * np.pi * k / q), np.sin(2 * np.pi * k / q)


def _exact_weights(code: QuantumCode) -> list[int] | None:
    """Squared amplitudes as integers over a common denominator, if exact and q in {1,2,4}."""
    if code.q not in (1, 2, 4) or any(st.amp_sq is None for st in code.states):
        return None
    fracs = [p for st in code.states for p in st.amp_sq]  # type: ignore[union-attr]
    den = 1
    for f in fracs:
        den = den * f.denominator // np.gcd(den, f.denominator)
    return [int(f * den) for f in fracs]


def kl_verify(
    code: QuantumCode,
    d_x: int | None = None,
    d_z: int | None = None,
    tol: float = DEFAULT_TOL,
    *,
    fail_fast: bool = False,
    keep_c_values: bool = True,
) -> KLReport:
    d_x = code.d_x if d_x is None else d_x
    d_z = code.d_z if d_z is None else d_z
    q, n = code.q, code.n
    n_states = code.dimension

    words = np.array([[int(x) % q for x in w] for w in code.support_words()], dtype=np.int64).reshape(-1, n)
    owner = np.array([i for i, st in enumerate(code.states) for _ in st.support], dtype=np.int64)
    amps = np.array([a for st in code.states for a in st.amplitudes], dtype=float)
    zparts = np.vstack([np.zeros((1, n), dtype=np.int64), exponent_array(q, n, d_z - 1)]) if d_z > 1 else np.zeros(
        (1, n), dtype=np.int64
    )
    cos_t, sin_t = _phase_tables(q)
    total = pauli_count(q, n, d_x, d_z)

    c_values: dict[str, complex] = {}
    worst: tuple[str, float] | None = None

    # diagonal X-part: only G_ii, from squared amplitudes
    k = np.mod(zparts @ words.T, q)
    exact_w = _exact_weights(code)
    onehot = np.zeros((len(words), n_states))
    onehot[np.arange(len(words)), owner] = 1.0
    if exact_w is not None:
        w = np.array(exact_w, dtype=object)
        re = np.rint(cos_t[k]).astype(np.int64).astype(object) * w
        im = np.rint(sin_t[k]).astype(np.int64).astype(object) * w
        g_re = re @ onehot.astype(np.int64).astype(object)
        g_im = im @ onehot.astype(np.int64).astype(object)
        den = sum(exact_w) // n_states if n_states else 1
        # deviation from c_P = tr G / k, scaled by k * den to stay integral
        sum_re = g_re.sum(axis=1, keepdims=True)
        sum_im = g_im.sum(axis=1, keepdims=True)
        diff_re = g_re * n_states - sum_re
        diff_im = g_im * n_states - sum_im
        dev = [
            max(Fraction(int(a) ** 2 + int(b) ** 2, (den * n_states) ** 2) for a, b in zip(r1, r2))
            for r1, r2 in zip(diff_re, diff_im)
        ]
        dev_f = np.sqrt(np.array([float(x) for x in dev]))
        bad = np.array([x != 0 for x in dev], dtype=bool)
        diag = (sum_re[:, 0].astype(float) + 1j * sum_im[:, 0].astype(float)) / (den * n_states)
    else:
        p = amps**2
        phase = (cos_t[k] + 1j * sin_t[k]) * p
        g = phase @ onehot
        diag = g.mean(axis=1)
        dev_f = np.max(np.abs(g - diag[:, None]), axis=1)
        bad = dev_f > tol
    zero_a = np.zeros(n, dtype=np.int64)
    if keep_c_values:
        for r in range(len(zparts)):
            if abs(diag[r]) > tol:
                c_values[_label(zero_a, zparts[r], q)] = complex(diag[r])
    if bad.any() or (dev_f.size and dev_f.max() > 0):
        r = int(np.argmax(dev_f))
        worst = (_label(zero_a, zparts[r], q), float(dev_f[r]))

    failed = bool(bad.any())
    if failed and fail_fast:
        return KLReport(False, d_x, d_z, total, worst, c_values, exact_w is not None, tol)

    # off-diagonal X-parts: group word pairs (u -> v) by a = v - u
    groups: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
    if d_x > 1 and len(words) > 1:
        for v in range(len(words)):
            diffs = np.mod(words[v] - words, q)
            wts = np.count_nonzero(diffs, axis=1)
            for u in np.flatnonzero((wts > 0) & (wts <= d_x - 1)):
                groups[tuple(int(x) for x in diffs[u])].append((int(u), v))

    def check_group(item):
        a, pairs = item
        us = np.array([u for u, _ in pairs])
        vs = np.array([v for _, v in pairs])
        kk = np.mod(zparts @ words[vs].T, q)
        vals = (cos_t[kk] + 1j * sin_t[kk]) * (amps[us] * amps[vs])
        slot = owner[us] * n_states + owner[vs]
        scatter = np.zeros((len(pairs), n_states * n_states))
        scatter[np.arange(len(pairs)), slot] = 1.0
        g = (vals @ scatter).reshape(len(zparts), n_states, n_states)
        cdiag = np.trace(g, axis1=1, axis2=2) / n_states
        dev = np.abs(g - cdiag[:, None, None] * np.eye(n_states)).reshape(len(zparts), -1).max(axis=1)
        return a, cdiag, dev

    items = sorted(groups.items())
    threads = max_threads()
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(check_group, items))
    else:
        results = map(check_group, items)
    for a, cdiag, dev in results:
        a_arr = np.array(a)
        r = int(np.argmax(dev))
        if worst is None or dev[r] > worst[1]:
            worst = (_label(a_arr, zparts[r], q), float(dev[r]))
        if dev[r] > tol:
            failed = True
        if keep_c_values:
            for rr in np.flatnonzero(np.abs(cdiag) > tol):
                c_values[_label(a_arr, zparts[rr], q)] = complex(cdiag[rr])
        if failed and fail_fast:
            break

    return KLReport(not failed, d_x, d_z, total, worst, c_values, exact_w is not None, tol)


def certify_distance(code: QuantumCode, tol: float = DEFAULT_TOL) -> tuple[int, int]:
    """Largest ``d_X`` (with ``d_Z = 1``) and ``d_Z`` (with ``d_X = 1``) that pass."""
    best = []
    for axis in (0, 1):
        d = 1
        while d <= code.n:
            dx, dz = (d + 1, 1) if axis == 0 else (1, d + 1)
            if not kl_verify(code, dx, dz, tol, fail_fast=True, keep_c_values=False).passed:
                break
            d += 1
        best.append(d)
    return best[0], best[1]
