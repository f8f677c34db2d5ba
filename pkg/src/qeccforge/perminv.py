"""Permutation-invariant qubit codes supported on Dicke states.

The logical states are superpositions of Dicke states ``|D^n_w>`` with weights
spaced at least ``d`` apart, so Paulis of weight below ``d`` never connect two
different support states. What remains are the diagonal conditions
``<D_w|P|D_w>``, and because the states are permutation invariant one Pauli per
permutation class is enough. These expectations are rational, so the whole
construction runs in exact arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from qeccforge.amatrix import nullspace_exact
from qeccforge.construct import TrivialKernel, _clean, split_balanced
from qeccforge.pauli import PauliLabel
from qeccforge.quantum import LogicalState, QuantumCode

BRUTE_FORCE_MAX_N = 14
SINGLE_SITE = ((1, 0), (0, 1), (1, 1))  # X, Z, XZ


class BudgetExceeded(ValueError):
    pass


class InequalityNotMet(ValueError):
    pass


@dataclass(frozen=True)
class DickeLabel:
    n: int
    w: int

    def __post_init__(self) -> None:
        if not 0 <= self.w <= self.n:
            raise ValueError(f"weight {self.w} outside 0..{self.n}")

    def __str__(self) -> str:
        return f"D({self.n},{self.w})"


def _masks(p: PauliLabel) -> tuple[int, int]:
    if p.q != 2:
        raise ValueError("Dicke expectations need qubit Paulis (q = 2)")
    amask = sum(1 << (p.n - 1 - i) for i, x in enumerate(p.a) if x)
    bmask = sum(1 << (p.n - 1 - i) for i, z in enumerate(p.b) if z)
    return amask, bmask


def _weight_words(n: int, w: int):
    for ones in itertools.combinations(range(n), w):
        yield sum(1 << (n - 1 - i) for i in ones)


def dicke_expectation(n: int, w: int, p: PauliLabel, w2: int | None = None) -> complex:
    """``<D^n_w|P|D^n_{w2}>`` by summing over the computational terms (``n <= 14``)."""
    w2 = w if w2 is None else w2
    if n > BRUTE_FORCE_MAX_N:
        raise BudgetExceeded(f"n = {n} above the brute-force limit {BRUTE_FORCE_MAX_N}; use dicke_expectation_exact")
    if p.n != n:
        raise ValueError("Pauli length differs from n")
    for weight in (w, w2):
        DickeLabel(n, weight)
    amask, bmask = _masks(p)
    total = 0
    for c in _weight_words(n, w2):
        if (c ^ amask).bit_count() == w:
            total += -1 if (c & bmask).bit_count() % 2 else 1
    return complex(total / math.sqrt(math.comb(n, w) * math.comb(n, w2)))


def dicke_expectation_exact(n: int, w: int, p: PauliLabel) -> Fraction:
    """Exact ``<D^n_w|P|D^n_w>`` for any ``n``.

    Only the ``k`` sites where ``P`` acts matter:
    ``sum_y <y+a|P|y> C(n-k, w-|y+a|) / C(n, w)`` over ``y`` in ``{0,1}^k``.
    """
    return _dicke_sum(n, w, w, p) / math.comb(n, w)


def _dicke_sum(n: int, w: int, w2: int, p: PauliLabel) -> Fraction:
    if p.q != 2:
        raise ValueError("Dicke expectations need qubit Paulis (q = 2)")
    sites = [i for i in range(p.n) if p.a[i] or p.b[i]]
    k = len(sites)
    a = [p.a[i] for i in sites]
    b = [p.b[i] for i in sites]
    total = 0
    for y in itertools.product((0, 1), repeat=k):
        x = [yi ^ ai for yi, ai in zip(y, a)]
        rest = w - sum(x)
        if rest != w2 - sum(y) or not 0 <= rest <= n - k:
            continue
        sign = -1 if sum(yi * bi for yi, bi in zip(y, b)) % 2 else 1
        total += sign * math.comb(n - k, rest)
    return Fraction(total)


def dicke_overlap(n: int, w: int, w2: int, p: PauliLabel) -> float:
    """``<D^n_w|P|D^n_{w2}>`` for any ``n``, from the local formula."""
    return float(_dicke_sum(n, w, w2, p)) / math.sqrt(math.comb(n, w) * math.comb(n, w2))


# --- Pauli classes up to permutation -----------------------------------------------


@dataclass(frozen=True)
class ClassCount:
    exact: int
    stated: int
    bound: int


def pauli_classes(n: int, w_max: int) -> list[PauliLabel]:
    """One representative per permutation class, weight ``<= w_max``, identity first.

    A class is a multiset of single-site Paulis; the representative puts them
    in sorted order on the first sites.
    """
    reps = [PauliLabel.identity(n, 2)]
    for w in range(1, min(w_max, n) + 1):
        for combo in itertools.combinations_with_replacement(SINGLE_SITE, w):
            a = tuple(x for x, _ in combo) + (0,) * (n - w)
            b = tuple(z for _, z in combo) + (0,) * (n - w)
            reps.append(PauliLabel(a, b, 2))
    return reps


def pauli_classes_up_to_permutation(n: int, w_max: int) -> ClassCount:
    """Class count three ways: exact multisets, ``sum C(n+w-1, w)``, and ``sum 3^w``."""
    exact = sum(math.comb(w + 2, 2) for w in range(min(w_max, n) + 1))
    stated = sum(math.comb(n + w - 1, w) if n + w - 1 >= 0 else 1 for w in range(w_max + 1))
    bound = sum(3**w for w in range(w_max + 1))
    return ClassCount(exact, stated, bound)


def counting_inequality(n: int, d: int) -> bool:
    """``floor(n/d) >= 1 + sum_{w<d} 3^w``: enough spaced Dicke columns for the rows."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return n // d >= 1 + sum(3**w for w in range(d))


def min_n(d: int) -> int:
    need = 1 + sum(3**w for w in range(d))
    return d * need


# --- construction -------------------------------------------------------------------


@dataclass(frozen=True)
class DickeCode:
    n: int
    d: int
    weights: tuple[int, ...]
    states: tuple[dict[int, Fraction], ...]
    kernel_dim: int
    rows: tuple[str, ...]

    def to_quantum_code(self) -> QuantumCode:
        """Expand into the computational basis (``n <= 14``)."""
        if self.n > BRUTE_FORCE_MAX_N:
            raise BudgetExceeded(f"n = {self.n} too large to expand")
        out = []
        for label, st in enumerate(self.states):
            words, weights = [], []
            for w, p in sorted(st.items()):
                for ones in itertools.combinations(range(self.n), w):
                    words.append(tuple(1 if i in ones else 0 for i in range(self.n)))
                    weights.append(p / math.comb(self.n, w))
            out.append(LogicalState.from_weights(label, words, weights))
        prov = {"algorithm": "dicke", "weights": list(self.weights), "kernel_dim": self.kernel_dim}
        return QuantumCode(2, self.n, self.d, self.d, tuple(out), prov)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "weights": list(self.weights),
            "kernel_dim": self.kernel_dim,
            "rows": list(self.rows),
            "states": [
                {"label": i, "support": [{"dicke_weight": w, "amp_sq": str(p)} for w, p in sorted(st.items())]}
                for i, st in enumerate(self.states)
            ],
        }


def dicke_a_matrix(n: int, d: int, weights: list[int] | None = None) -> tuple[list[list[Fraction]], list[str], list[int]]:
    """Rows: ones, then one per nonzero Pauli class of weight ``<= d-1``; all-zero rows dropped.

    Every Dicke expectation of a qubit Pauli is real, so imaginary rows are
    identically zero and never appear.
    """
    if weights is None:
        weights = list(range(0, n + 1, d))
    rows: list[list[Fraction]] = [[Fraction(1)] * len(weights)]
    labels = ["ones"]
    seen = {tuple(rows[0])}
    for p in pauli_classes(n, d - 1)[1:]:
        row = [dicke_expectation_exact(n, w, p) for w in weights]
        key = tuple(row)
        if all(v == 0 for v in row) or key in seen:
            continue
        seen.add(key)
        rows.append(row)
        labels.append(str(p))
    return rows, labels, weights


def build_perminv_code(n: int, d: int, *, kernel_index: int = 0, check_inequality: bool = True) -> DickeCode:
    if check_inequality and not counting_inequality(n, d):
        raise InequalityNotMet(f"floor({n}/{d}) < 1 + sum_(w<{d}) 3^w; need n >= {min_n(d)}")
    rows, labels, weights = dicke_a_matrix(n, d)
    basis = nullspace_exact(rows)
    if not basis:
        raise TrivialKernel(f"Dicke A-matrix ({len(rows)}x{len(weights)}) has a trivial kernel")
    x = _clean(np.array(basis[kernel_index], dtype=object))
    split = split_balanced(x)
    states = []
    for part in (split.x_plus, split.x_minus):
        total = sum(part)
        states.append({w: v / total for w, v in zip(weights, part) if v != 0})
    return DickeCode(n, d, tuple(weights), tuple(states), len(basis), tuple(labels))


@dataclass(frozen=True)
class DickeKLReport:
    passed: bool
    worst: float
    classes_checked: int


def kl_verify_dicke(code: DickeCode, tol: float = 1e-12) -> DickeKLReport:
    """KL check in the Dicke basis over class representatives of weight ``<= d-1``.

    Permutation-invariant states give the same Gram matrix for every member
    of a class, so representatives cover all Paulis.
    """
    classes = pauli_classes(code.n, code.d - 1)
    amps = [{w: math.sqrt(p) for w, p in st.items()} for st in code.states]
    worst = 0.0
    for p in classes:
        g = np.zeros((len(amps), len(amps)))
        for i, si in enumerate(amps):
            for j, sj in enumerate(amps):
                g[i, j] = sum(
                    ai * aj * dicke_overlap(code.n, wi, wj, p)
                    for wi, ai in si.items()
                    for wj, aj in sj.items()
                )
        dev = np.abs(g - np.eye(len(amps)) * np.trace(g) / len(amps)).max()
        worst = max(worst, float(dev))
    return DickeKLReport(worst <= tol, worst, len(classes))
