"""Logical states from a classical code.

``build_logical_qubit`` takes one kernel vector of A, splits it into positive
and negative parts, and uses their square roots as the amplitudes of
``|0_L>`` and ``|1_L>``. ``build_logical_qudit`` then adds one state at a time:
each new state lives on fresh columns and must reproduce the previous state's
diagonal expectations, which is a nonnegative feasibility problem solved by
Dines elimination.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from qeccforge.amatrix import AMatrix, build_a_matrix, kernel
from qeccforge.classical import ClassicalCode, code_distance, hamming_ball_volume, q_ary_entropy
from qeccforge.feasibility import DEFAULT_CAP, dines_solve
from qeccforge.quantum import LogicalState, QuantumCode

log = logging.getLogger(__name__)

SUPPORT_TOL = 1e-10
BALANCE_TOL = 1e-9


class ConstructionError(Exception):
    pass


class TrivialKernel(ConstructionError):
    """A has no nonzero kernel vector: no code at this d_Z."""


class DistanceTooSmall(ConstructionError):
    pass


class InsufficientCode(ConstructionError):
    pass


class RecursionHalted(ConstructionError):
    def __init__(self, step: int, blocking_row: str | None, partial: QuantumCode | None = None) -> None:
        super().__init__(f"recursion halted at step {step}: same-sign row {blocking_row}")
        self.step = step
        self.blocking_row = blocking_row
        self.partial = partial


@dataclass(frozen=True)
class BalancedSplit:
    x: tuple
    x_plus: tuple
    x_minus: tuple
    mass: object


def split_balanced(x) -> BalancedSplit:
    """``x = x_plus - x_minus`` with disjoint supports; ``mass = |x_plus|_1 = |x|_1 / 2``."""
    vals = list(x)
    if not vals or all(v == 0 for v in vals):
        raise ValueError("cannot split the zero vector")
    exact = all(isinstance(v, (int, Fraction, np.integer)) for v in vals)
    if exact:
        vals = [Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v) for v in vals]
        if sum(vals) != 0:
            raise ValueError(f"vector is not balanced (sum {sum(vals)})")
        zero = Fraction(0)
    else:
        vals = [float(v) for v in vals]
        if abs(math.fsum(vals)) > BALANCE_TOL * math.fsum(abs(v) for v in vals):
            raise ValueError(f"vector is not balanced (sum {math.fsum(vals)})")
        zero = 0.0
    plus = tuple(v if v > 0 else zero for v in vals)
    minus = tuple(-v if v < 0 else zero for v in vals)
    return BalancedSplit(tuple(vals), plus, minus, sum(plus))


def _clean(v: np.ndarray) -> np.ndarray:
    """Zero float entries at round-off level and fix the overall sign."""
    if v.dtype == object:
        vals = [Fraction(x) for x in v]
        scale = math.lcm(*(x.denominator for x in vals))
        ints = [int(x * scale) for x in vals]
        g = math.gcd(*ints)
        out = np.array([Fraction(i // g) for i in ints], dtype=object)
    else:
        out = np.where(np.abs(v) <= SUPPORT_TOL * np.max(np.abs(v)), 0.0, v)
    first = next(x for x in out if x != 0)
    return -out if first < 0 else out


def logical_qubit_from_vector(
    code: ClassicalCode, x, d_x: int, d_z: int, provenance: dict | None = None
) -> QuantumCode:
    """The two states built from the positive and negative parts of a balanced vector."""
    split = split_balanced(x)
    words = list(code.codewords)
    s0 = LogicalState.from_weights(0, words, split.x_plus)
    s1 = LogicalState.from_weights(1, words, split.x_minus)
    return QuantumCode(code.q, code.n, d_x, d_z, (s0, s1), provenance or {})


def _vector_repr(v) -> list:
    return [str(x) if isinstance(x, Fraction) else float(x) for x in v]


def _check_distance(code: ClassicalCode, d_x: int) -> None:
    if len(code) >= 2:
        dist = code_distance(code)
        if dist < d_x:
            raise DistanceTooSmall(f"dist(C) = {dist} < d_X = {d_x}")


def _pick_vector(a: AMatrix, backend: str, kernel_index: int):
    basis = kernel(a, backend)
    if basis.dim == 0:
        raise TrivialKernel(f"kernel of A ({a.shape[0]}x{a.shape[1]}, d_Z={a.d_z}) is trivial")
    if not 0 <= kernel_index < basis.dim:
        raise ValueError(f"kernel index {kernel_index} outside [0, {basis.dim})")
    return basis, _clean(basis.vectors[kernel_index])


def build_logical_qubit(
    code: ClassicalCode,
    d_x: int,
    d_z: int,
    *,
    backend: str = "auto",
    kernel_index: int = 0,
) -> QuantumCode:
    """One logical qubit from a kernel vector of A (Algorithm 1)."""
    _check_distance(code, d_x)
    a = build_a_matrix(code, d_z)
    basis, x = _pick_vector(a, backend, kernel_index)
    prov = {
        "algorithm": "logical-qubit",
        "alphabet": code.alphabet.header(),
        "backend": basis.backend,
        "a_shape": list(a.shape),
        "rows_unpruned": a.n_rows_unpruned,
        "kernel_dim": basis.dim,
        "kernel_index": kernel_index,
        "kernel_vector": _vector_repr(x),
    }
    return logical_qubit_from_vector(code, x, d_x, d_z, prov)


def _take_block(pool: list[int], rho: int) -> list[int]:
    if len(pool) - rho < rho:
        return list(pool)
    return pool[:rho]


def build_logical_qudit(
    code: ClassicalCode,
    d_x: int,
    d_z: int,
    m_target: int | None = None,
    *,
    backend: str = "auto",
    kernel_index: int = 0,
    strict: bool = False,
    raise_on_halt: bool = False,
    cap: int = DEFAULT_CAP,
) -> QuantumCode:
    """Recursive multi-state construction (Algorithm 2).

    Columns are consumed in canonical order in blocks of ``2 V_q(d_Z - 1)``
    (a short tail joins the last block). The first block gives two states as
    in Algorithm 1. Every later step solves, for ``x >= 0`` on the next block,
    ``A_prev x_prev = A_new x`` written literally as the alternating-sign
    homogeneous system ``[A_2 A_3][-x_1^-; x_2] = 0``, ``[A_3 A_4][x_2; -x_3] = 0``, ...
    If the step is infeasible the block grows by one column until the pool is
    empty, then the recursion halts. Columns a step leaves at zero go back to
    the pool. ``m_target=None`` means as many states as possible.
    """
    if m_target is not None and m_target < 2:
        raise ValueError("m_target must be at least 2")
    _check_distance(code, d_x)
    rho = 2 * hamming_ball_volume(code.q, code.n, d_z - 1)
    if len(code) < rho:
        if strict:
            raise InsufficientCode(f"|C| = {len(code)} < 2 V_q(d_Z - 1) = {rho}")
        log.info("|C| = %d below 2V = %d; trying anyway", len(code), rho)

    a_full = build_a_matrix(code, d_z)
    pool = list(range(len(code)))
    block = _take_block(pool, rho)
    basis, x = _pick_vector(a_full.restrict(block), backend, kernel_index)
    split = split_balanced(x)
    words = [code.codewords[c] for c in block]
    states = [
        LogicalState.from_weights(0, words, split.x_plus),
        LogicalState.from_weights(1, words, split.x_minus),
    ]
    exact = basis.backend == "exact"
    dense = a_full.integer_entries().astype(object) if exact else a_full.entries

    used = {block[i] for i, v in enumerate(split.x) if v != 0}
    pool = [c for c in pool if c not in used]
    prev_cols = [block[i] for i, v in enumerate(split.x_minus) if v != 0]
    prev_vals = [v for v in split.x_minus if v != 0]
    total = sum(prev_vals)
    prev_vals = [v / total for v in prev_vals]

    steps = [{"block": block, "support": sorted(used)}]
    halted = None
    target = m_target if m_target is not None else len(code)
    step = 2
    while len(states) < target and pool:
        block = _take_block(pool, rho)
        extra = len(block)
        b = dense[:, prev_cols] @ np.array(prev_vals, dtype=object if exact else float)
        known_sign, new_sign = (-1, 1) if step % 2 == 0 else (1, -1)
        while True:
            system = np.column_stack([known_sign * b, new_sign * dense[:, block]])
            res = dines_solve(system, cap=cap)
            if res.feasible or extra >= len(pool):
                break
            block = pool[: extra + 1]
            extra += 1
        if not res.feasible:
            row = str(a_full.rows[res.blocking_row]) if res.blocking_row is not None else None
            halted = {"step": step, "blocking_row": row, "method": res.method}
            break
        sol = list(res.x[1:])
        if exact:
            sol = [Fraction(int(v)) if not isinstance(v, Fraction) else v for v in sol]
        else:
            top = max(sol)
            sol = [v if v > SUPPORT_TOL * top else 0.0 for v in sol]
        words = [code.codewords[c] for c in block]
        states.append(LogicalState.from_weights(len(states), words, sol))
        new_used = [block[i] for i, v in enumerate(sol) if v != 0]
        pool = [c for c in pool if c not in set(new_used)]
        prev_cols = new_used
        s = sum(v for v in sol if v != 0)
        prev_vals = [v / s for v in sol if v != 0]
        steps.append({"block": block, "support": new_used, "method": res.method, "max_columns": res.max_columns})
        step += 1

    prov = {
        "algorithm": "logical-qudit",
        "alphabet": code.alphabet.header(),
        "backend": basis.backend,
        "block_size": rho,
        "kernel_dim_block1": basis.dim,
        "kernel_index": kernel_index,
        "kernel_vector": _vector_repr(x),
        "steps": steps,
        "halted": halted,
    }
    result = QuantumCode(code.q, code.n, d_x, d_z, tuple(states), prov)
    if halted is not None and raise_on_halt:
        raise RecursionHalted(halted["step"], halted["blocking_row"], result)
    return result


def upper_bound_M(q: int, n: int, d_z: int) -> int:
    """``floor(q^(n (1 - 2 Ent_q(d_Z/n))))``; 1 when the exponent is not positive."""
    ratio = d_z / n
    if not 0.0 <= ratio <= (q - 1) / q:
        raise ValueError(f"d_Z/n = {ratio} outside [0, {(q - 1) / q}]")
    if d_z == 0:
        return q**n
    expo = n * (1.0 - 2.0 * q_ary_entropy(q, ratio))
    if expo <= 0:
        return 1
    with mpmath.workdps(50):
        return int(mpmath.floor(mpmath.power(q, expo)))
