"""Approximate codes assembled from several independently built qubit pairs.

Each pair ``(|2j-1_L>, |2j_L>)`` built from its own block of codewords has
equal diagonal expectations inside the pair (the vector ``gamma_j``), but
different pairs need not agree. The spread ``delta`` between pairs measures
how far the union is from an exact code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qeccforge.classical import ClassicalCode, hamming_ball_volume, random_code
from qeccforge.construct import ConstructionError, build_logical_qubit
from qeccforge.pauli import PauliLabel, exponent_array
from qeccforge.quantum import LogicalState, QuantumCode
from qeccforge.verify import DEFAULT_TOL, kl_verify

INFIDELITY_CAVEAT = "hidden constant in O(delta V^4) taken as 1"


class InvalidPair(ValueError):
    pass


@dataclass(frozen=True)
class GammaVector:
    pair_index: int
    labels: tuple[str, ...]
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


def _diag_paulis(q: int, n: int, d_z: int) -> np.ndarray:
    zero = np.zeros((1, n), dtype=np.int64)
    return np.vstack([zero, exponent_array(q, n, d_z - 1)]) if d_z > 1 else zero


def diagonal_expectations(state: LogicalState, q: int, zs: np.ndarray) -> np.ndarray:
    words = np.mod(np.array(state.support, dtype=np.int64), q)
    p = np.array(state.amplitudes) ** 2
    k = np.mod(zs @ words.T, q)
    return np.exp(2j * np.pi * k / q) @ p


def gamma_vector(
    pair: QuantumCode | tuple[LogicalState, LogicalState],
    d_z: int | None = None,
    *,
    q: int | None = None,
    pair_index: int = 0,
    d_x: int = 1,
    tol: float = DEFAULT_TOL,
) -> GammaVector:
    """Shared diagonal expectations of a valid qubit pair, identity first."""
    if isinstance(pair, QuantumCode):
        code = pair
        d_z = code.d_z if d_z is None else d_z
    else:
        if q is None or d_z is None:
            raise ValueError("q and d_z are required when passing bare states")
        n = len(pair[0].support[0])
        code = QuantumCode(q, n, d_x, d_z, tuple(pair))
    if code.dimension != 2:
        raise InvalidPair(f"a pair has 2 states, got {code.dimension}")
    report = kl_verify(code, d_x, d_z, tol, fail_fast=True, keep_c_values=False)
    if not report.passed:
        raise InvalidPair(f"pair is not a valid qubit code: {report.summary()}")
    zs = _diag_paulis(code.q, code.n, d_z)
    g0 = diagonal_expectations(code.states[0], code.q, zs)
    g1 = diagonal_expectations(code.states[1], code.q, zs)
    if np.max(np.abs(g0 - g1)) > tol:
        raise InvalidPair("the two states disagree on a diagonal expectation")
    zero = (0,) * code.n
    labels = tuple(str(PauliLabel(zero, tuple(int(x) for x in z), code.q)) for z in zs)
    return GammaVector(pair_index, labels, 0.5 * (g0 + g1))


def delta(gammas: list[GammaVector]) -> float:
    """Largest sup-norm distance between any two gamma vectors (at most 2)."""
    if len(gammas) < 2:
        raise ValueError("delta needs at least two pairs")
    vals = np.array([g.values for g in gammas])
    diff = np.abs(vals[:, None, :] - vals[None, :, :])
    return min(float(diff.max()), 2.0)


def expected_M_bound(m: int, q: int, n: int, d_z: int, delta_: float) -> float:
    """``2 floor(m / 2V) (delta/2)^V`` with ``V = V_q(d_Z - 1)``."""
    if not 0.0 < delta_ <= 2.0:
        raise ValueError(f"delta = {delta_} outside (0, 2]")
    v = hamming_ball_volume(q, n, d_z - 1)
    return 2 * (m // (2 * v)) * (delta_ / 2) ** v


def infidelity_bound(delta_: float, q: int, n: int, d_z: int) -> float:
    """``delta V^4`` with ``V = V_q(d_Z - 1)``; see ``INFIDELITY_CAVEAT``."""
    if delta_ < 0:
        raise ValueError("delta must be nonnegative")
    return delta_ * hamming_ball_volume(q, n, d_z - 1) ** 4


@dataclass(frozen=True)
class PairSet:
    pairs: list[QuantumCode]
    skipped_blocks: list[int]
    block_size: int


def pairs_from_code(code: ClassicalCode, d_z: int, *, d_x: int = 1, backend: str = "auto") -> PairSet:
    """One qubit pair per contiguous block of ``2 V_q(d_Z - 1)`` codewords.

    Blocks whose A-matrix has a trivial kernel are skipped; a short tail is dropped.
    """
    rho = 2 * hamming_ball_volume(code.q, code.n, d_z - 1)
    pairs: list[QuantumCode] = []
    skipped: list[int] = []
    for b in range(len(code) // rho):
        sub = code.subcode(range(b * rho, (b + 1) * rho))
        try:
            pairs.append(build_logical_qubit(sub, d_x, d_z, backend=backend))
        except ConstructionError:
            skipped.append(b)
    return PairSet(pairs, skipped, rho)


@dataclass(frozen=True)
class TrialRow:
    seed: int
    m: int
    pairs: int
    logical_states: int
    delta: float | None
    expected_M: float | None
    infidelity: float | None


def monte_carlo(q: int, n: int, m: int, d_z: int, trials: int, seed: int) -> list[TrialRow]:
    """Achieved ``(M, delta)`` over seeded random codes, next to the bounds."""
    rows = []
    seeds = np.random.SeedSequence(seed).generate_state(trials, dtype=np.uint64)
    for s in seeds:
        s = int(s)
        ps = pairs_from_code(random_code(q, n, m, s), d_z)
        gammas = [gamma_vector(p, d_z, pair_index=i) for i, p in enumerate(ps.pairs)]
        if len(gammas) >= 2:
            dl = delta(gammas)
            exp_m = expected_M_bound(m, q, n, d_z, dl) if dl > 0 else 0.0
            inf = infidelity_bound(dl, q, n, d_z)
        else:
            dl = exp_m = inf = None
        rows.append(TrialRow(s, m, len(gammas), 2 * len(gammas), dl, exp_m, inf))
    return rows
