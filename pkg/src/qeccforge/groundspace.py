"""Ground space of the spin-s chain with transport and pair-creation moves.

The chain Hamiltonian is a sum of two-site projectors whose zero-energy
states are uniform superpositions over classes of strings connected by the
local moves ``0m <-> m0`` and ``00 <-> m,-m`` (``m > 0``). Every class holds
exactly one irreducible string ``x_1..x_k 0..0``. The product ground states
that survive the on-site ``|0><0|`` penalty are the strings in ``T_n``: no
zero and no ``m`` immediately followed by ``-m``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from qeccforge import kernels
from qeccforge.classical import ClassicalCode, filter_forbidden, is_allowed, map_beta, q_ary_entropy
from qeccforge.construct import ConstructionError, build_logical_qubit
from qeccforge.quantum import QuantumCode
from qeccforge.verify import kl_verify

SpinString = tuple[int, ...]

STATE_BUDGET = 10**7
BISECT_TOL = 1e-9
JUSTESEN_CONST = 0.11


class StateSpaceTooLarge(ValueError):
    pass


class EmbeddingError(ConstructionError):
    pass


@dataclass(frozen=True)
class GroundSpaceModel:
    s: int
    n: int
    J: float = 1.0

    def __post_init__(self) -> None:
        if self.s < 1 or self.n < 1:
            raise ValueError("need s >= 1 and n >= 1")
        if self.J <= 0:
            raise ValueError("J must be positive")

    @property
    def local_dim(self) -> int:
        return 2 * self.s + 1


@dataclass(frozen=True)
class CanonicalForm:
    irreducible: SpinString
    zeros: int

    @property
    def k(self) -> int:
        return len(self.irreducible)

    @property
    def string(self) -> SpinString:
        return self.irreducible + (0,) * self.zeros

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.string)


def _check_symbols(t: SpinString, s: int) -> None:
    bad = [v for v in t if not -s <= v <= s]
    if bad:
        raise ValueError(f"symbols {bad} outside -{s}..{s}")


def local_moves(t: SpinString, s: int) -> list[SpinString]:
    """Every string one move away from ``t``, sorted."""
    t = tuple(t)
    _check_symbols(t, s)
    out = set()
    for i in range(len(t) - 1):
        a, b = t[i], t[i + 1]
        if a == 0 and b == 0:
            for m in range(1, s + 1):
                out.add(t[:i] + (m, -m) + t[i + 2 :])
        elif a == 0 or b == 0:
            out.add(t[:i] + (b, a) + t[i + 2 :])
        elif a > 0 and b == -a:
            out.add(t[:i] + (0, 0) + t[i + 2 :])
    return sorted(out)


def canonicalize(t: SpinString) -> CanonicalForm:
    """Shift zeros right and cancel ``m,-m`` pairs, leftmost first."""
    stack: list[int] = []
    for v in t:
        if v == 0:
            continue
        if stack and stack[-1] > 0 and stack[-1] == -v:
            stack.pop()
        else:
            stack.append(v)
    return CanonicalForm(tuple(stack), len(t) - len(stack))


def _nonzero_symbols(s: int) -> list[int]:
    return [v for v in range(-s, s + 1) if v != 0]


def enumerate_Tn(s: int, n: int) -> Iterator[SpinString]:
    """Strings of ``T_n`` in lexicographic order."""
    symbols = _nonzero_symbols(s)

    def extend(prefix: list[int]) -> Iterator[SpinString]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        last = prefix[-1] if prefix else 0
        for v in symbols:
            if last > 0 and v == -last:
                continue
            prefix.append(v)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def Tn_blocks(s: int, n: int, prefix_len: int | None = None) -> Iterator[np.ndarray]:
    """``T_n`` as int8 arrays, one block per allowed prefix, in lexicographic order."""
    symbols = np.array(_nonzero_symbols(s), dtype=np.int8)
    if prefix_len is None:
        prefix_len = max(0, n - 6)
    prefix_len = min(prefix_len, n)
    for prefix in enumerate_Tn(s, prefix_len) if prefix_len else [()]:
        block = np.array([prefix], dtype=np.int8).reshape(1, prefix_len)
        for _ in range(n - prefix_len):
            last = block[:, -1] if block.shape[1] else np.zeros(len(block), dtype=np.int8)
            rows = np.repeat(block, len(symbols), axis=0)
            col = np.tile(symbols, len(block))
            ok = ~((np.repeat(last, len(symbols)) > 0) & (col == -np.repeat(last, len(symbols))))
            block = np.column_stack([rows[ok], col[ok]])
        yield block


def count_Tn(s: int, n: int) -> int:
    """``|T_n|`` by the exact recursion ``T_{n+2} = 2s T_{n+1} - s T_n``."""
    if s < 1 or n < 0:
        raise ValueError("need s >= 1 and n >= 0")
    prev, cur = 1, 2 * s
    if n == 0:
        return 1
    for _ in range(n - 1):
        prev, cur = cur, 2 * s * cur - s * prev
    return cur


def count_Tn_closed(s: int, n: int) -> float:
    if s == 1:
        return float(n + 1)
    r = math.sqrt(1.0 - 1.0 / s)
    return s**n / (2.0 * r) * ((1.0 + r) ** (n + 1) - (1.0 - r) ** (n + 1))


def kernel_dimension(s: int, n: int) -> int:
    """Number of move classes on ``n`` sites: ``sum_{k<=n} |T_k|``."""
    return sum(count_Tn(s, k) for k in range(n + 1))


def kernel_dimension_closed(s: int, n: int) -> float:
    if s == 1:
        return (n + 1) * (n + 2) / 2
    return math.fsum(count_Tn_closed(s, k) for k in range(n + 1))


def product_ground_fraction(s: int, n: int) -> float:
    return count_Tn(s, n) / kernel_dimension(s, n)


# --- union-find oracle ------------------------------------------------------------


def string_to_index(t: SpinString, s: int) -> int:
    idx = 0
    for v in t:
        idx = idx * (2 * s + 1) + v + s
    return idx


def index_to_string(idx: int, s: int, n: int) -> SpinString:
    base = 2 * s + 1
    out = []
    for _ in range(n):
        idx, d = divmod(idx, base)
        out.append(d - s)
    return tuple(reversed(out))


@dataclass(frozen=True)
class OracleResult:
    s: int
    n: int
    component_count: int
    class_sizes: dict[SpinString, int]
    one_irreducible_each: bool
    canonical_constant: bool
    backend: str

    @property
    def matches_formula(self) -> bool:
        return self.component_count == kernel_dimension(self.s, self.n)

    @property
    def valid(self) -> bool:
        return self.matches_formula and self.one_irreducible_each and self.canonical_constant


def equivalence_oracle(s: int, n: int, budget: int = STATE_BUDGET) -> OracleResult:
    """Connected components of the move graph on all ``(2s+1)^n`` strings."""
    total = (2 * s + 1) ** n
    if total > budget:
        raise StateSpaceTooLarge(f"(2s+1)^n = {total} exceeds budget {budget}")
    roots = kernels.component_labels(s, n)
    canon = kernels.canonical_indices(s, n)
    comp_ids, comp_of, sizes = np.unique(roots, return_inverse=True, return_counts=True)
    n_comp = len(comp_ids)

    fixed = canon == np.arange(total)
    fixed_per_comp = np.bincount(comp_of[fixed], minlength=n_comp)
    one_each = bool(np.all(fixed_per_comp == 1))

    # canonical index is constant on each component and lies inside it
    first = np.full(n_comp, -1, dtype=np.int64)
    first[comp_of[::-1]] = canon[::-1]
    constant = bool(np.all(canon == first[comp_of])) and bool(np.all(comp_of[first] == np.arange(n_comp)))

    class_sizes = {index_to_string(int(first[c]), s, n): int(sizes[c]) for c in range(n_comp)}
    return OracleResult(s, n, n_comp, class_sizes, one_each, constant, kernels.BACKEND)


def dense_hamiltonian(s: int, n: int, *, with_penalty: bool = True, J: float = 1.0) -> np.ndarray:
    """Explicit matrix of the chain Hamiltonian for tiny chains (``(2s+1)^n <= 5^4``)."""
    base = 2 * s + 1
    dim = base**n
    if dim > 625:
        raise StateSpaceTooLarge(f"dense Hamiltonian of dimension {dim} is too large")
    h = np.zeros((dim, dim))
    for idx in range(dim):
        t = index_to_string(idx, s, n)
        for i in range(n - 1):
            a, b = t[i], t[i + 1]
            # each projector (|u> - |v>)(<u| - <v|)/2 is added once, from the u side
            partners = []
            if a == 0 and b != 0:
                partners.append(t[:i] + (b, 0) + t[i + 2 :])
            if a == 0 and b == 0:
                partners.extend(t[:i] + (m, -m) + t[i + 2 :] for m in range(1, s + 1))
            for u in partners:
                j = string_to_index(u, s)
                h[idx, idx] += 0.5
                h[j, j] += 0.5
                h[idx, j] -= 0.5
                h[j, idx] -= 0.5
        if with_penalty:
            h[idx, idx] += J * sum(1 for v in t if v == 0)
    return h


def dense_ground_dimension(s: int, n: int, *, with_penalty: bool = False, tol: float = 1e-9) -> int:
    evals = np.linalg.eigvalsh(dense_hamiltonian(s, n, with_penalty=with_penalty))
    return int(np.sum(np.abs(evals) <= tol))


# --- distance thresholds ---------------------------------------------------------


def _gv_slack(s: int, tau: float) -> float:
    x = 2 * tau
    return 1.0 - (q_ary_entropy(2, x) + q_ary_entropy(2 * s + 1, x) * math.log2(2 * s + 1))


def _justesen_slack(s: int, tau: float) -> float:
    return 0.5 - tau / JUSTESEN_CONST - math.log2(2 * s + 1) * q_ary_entropy(2 * s + 1, 2 * tau)


def _first_crossing(slack, hi: float, grid: int = 2000) -> float:
    """End of the feasible interval that starts at ``tau = 0``, to ``BISECT_TOL``."""
    if slack(0.0) < 0:
        return 0.0
    lo = 0.0
    step = hi / grid
    for i in range(1, grid + 1):
        t = i * step
        if slack(t) < 0:
            a, b = lo, t
            while b - a > BISECT_TOL:
                mid = 0.5 * (a + b)
                if slack(mid) >= 0:
                    a = mid
                else:
                    b = mid
            return a
        lo = t
    return hi


def gv_threshold(s: int) -> float:
    """Relative distance reachable by random embedded codes at spin ``s``."""
    if s < 1:
        raise ValueError("s must be at least 1")
    return _first_crossing(lambda t: _gv_slack(s, t), 0.5)


def justesen_threshold(s: int) -> float:
    """Relative distance reachable with concatenated (Justesen-type) inputs at spin ``s``."""
    if s < 1:
        raise ValueError("s must be at least 1")
    return _first_crossing(lambda t: _justesen_slack(s, t), JUSTESEN_CONST / 2)


def justesen_side_condition(s: int, tau: float) -> bool:
    """``tau < 2s/(2s+1)``; checked separately from the displayed inequality."""
    return tau < 2 * s / (2 * s + 1)


def threshold_table(construct: str, s_values) -> list[tuple[int, float]]:
    fn = {"gv": gv_threshold, "justesen": justesen_threshold}.get(construct)
    if fn is None:
        raise ValueError(f"unknown construction {construct!r}")
    return [(s, fn(s)) for s in s_values]


# --- embedding ------------------------------------------------------------------


def embed_and_check(code: ClassicalCode, s: int, d_x: int, d_z: int, *, tol: float = 1e-8) -> QuantumCode:
    """Map a binary code into ``{1, 2}`` symbols and build a ground-space code from it."""
    spin = map_beta(code, s)
    kept = filter_forbidden(spin)
    if kept is None or len(kept) != len(spin):
        raise EmbeddingError("embedded code has strings outside T_n")
    qc = build_logical_qubit(spin, d_x, d_z)
    report = kl_verify(qc, d_x, d_z, tol)
    if not report.passed:
        raise EmbeddingError(f"embedded code fails the KL check: {report.summary()}")
    certified = all(is_allowed(w) and canonicalize(w).k == len(w) for w in qc.support_words())
    if not certified:
        raise EmbeddingError("a support string is not a product ground state")
    prov = dict(qc.provenance)
    prov.update({"embedding": "beta", "s": s, "kl_passed": True, "ground_states": True})
    return QuantumCode(qc.q, qc.n, qc.d_x, qc.d_z, qc.states, prov)


def support_ground_check(code: QuantumCode) -> bool:
    """Every support word, read as spin symbols, is an irreducible zero-free string."""
    return all(is_allowed(w) and 0 not in w and canonicalize(w).k == len(w) for w in code.support_words())


def brute_force_Tn(s: int, n: int) -> list[SpinString]:
    """Filter of the full product set; a slow cross-check for ``enumerate_Tn``."""
    return [t for t in itertools.product(_nonzero_symbols(s), repeat=n) if is_allowed(t)]
