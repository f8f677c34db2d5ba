"""Generalized qudit Paulis ``X^a Z^b`` and their expectations on product states.

Conventions: ``Z|j> = w^j |j>`` and ``X|j+1> = |j>`` with ``w = exp(2 pi i / q)``,
so ``X^a Z^b |c> = w^(b.c) |c - a>``. Spin symbols ``-s..s`` are reduced mod
``2s+1`` before any phase arithmetic. Every phase is carried as the exact
integer ``k`` with value ``w^k``; floats are only a view.
"""

from __future__ import annotations

import cmath
import itertools
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from qeccforge.quantum import LogicalState


@dataclass(frozen=True)
class PauliLabel:
    """``X^{a_1} Z^{b_1} (x) ... (x) X^{a_n} Z^{b_n}``, exponents reduced mod ``q``."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    q: int

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ValueError("X and Z exponent vectors differ in length")
        object.__setattr__(self, "a", tuple(int(x) % self.q for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) % self.q for x in self.b))

    @classmethod
    def identity(cls, n: int, q: int) -> PauliLabel:
        return cls((0,) * n, (0,) * n, q)

    @property
    def n(self) -> int:
        return len(self.a)

    def is_identity(self) -> bool:
        return not any(self.a) and not any(self.b)

    def __str__(self) -> str:
        sites = []
        for x, z in zip(self.a, self.b):
            term = (f"X{x}" if x else "") + (f"Z{z}" if z else "")
            sites.append(term or "I")
        return ".".join(sites)


def wt_x(p: PauliLabel) -> int:
    return sum(1 for x in p.a if x)


def wt_z(p: PauliLabel) -> int:
    return sum(1 for x in p.b if x)


@dataclass(frozen=True)
class DiagonalPauli:
    z: tuple[int, ...]
    q: int

    @property
    def weight(self) -> int:
        return sum(1 for x in self.z if x)

    def as_label(self) -> PauliLabel:
        return PauliLabel((0,) * len(self.z), self.z, self.q)


@dataclass(frozen=True)
class PauliExpectation:
    """The root of unity ``w^k``; ``k`` is exact, ``value`` is the float view."""

    k: int
    q: int

    @property
    def value(self) -> complex:
        return cmath.exp(2j * math.pi * self.k / self.q)

    @property
    def re(self) -> float:
        return math.cos(2 * math.pi * self.k / self.q)

    @property
    def im(self) -> float:
        return math.sin(2 * math.pi * self.k / self.q)


def exponent_vectors(q: int, n: int, w_max: int, w_min: int = 1) -> Iterator[tuple[int, ...]]:
    """Vectors in ``Z_q^n`` with ``w_min <= weight <= w_max``.

    Frozen order: by weight, then support (lexicographic position tuples), then
    exponent values (lexicographic). A-matrix row order depends on it.
    """
    if not 0 <= w_max <= n:
        raise ValueError(f"w_max = {w_max} outside [0, {n}]")
    for w in range(w_min, w_max + 1):
        for support in itertools.combinations(range(n), w):
            for values in itertools.product(range(1, q), repeat=w):
                z = [0] * n
                for pos, v in zip(support, values):
                    z[pos] = v
                yield tuple(z)


def exponent_array(q: int, n: int, w_max: int, w_min: int = 1) -> np.ndarray:
    rows = list(exponent_vectors(q, n, w_max, w_min))
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def enumerate_diagonal(q: int, n: int, w_max: int) -> Iterator[DiagonalPauli]:
    """Every diagonal Pauli of weight ``1..w_max`` exactly once (count ``V_q(w_max) - 1``)."""
    for z in exponent_vectors(q, n, w_max):
        yield DiagonalPauli(z, q)


def phase_exponent(c: Sequence[int], z: Sequence[int], q: int) -> int:
    return sum((int(ci) % q) * int(zi) for ci, zi in zip(c, z)) % q


def expectation_diagonal(c: Sequence[int], z: DiagonalPauli | Sequence[int], q: int | None = None) -> PauliExpectation:
    """``<c| Z^z |c> = w^(z.c)`` for a product basis state ``|c>``."""
    if isinstance(z, DiagonalPauli):
        q = z.q
        z = z.z
    if q is None:
        raise ValueError("q is required when z is a plain vector")
    if len(c) != len(z):
        raise ValueError("codeword and Pauli lengths differ")
    return PauliExpectation(phase_exponent(c, z, q), q)


def expectation_general(state: LogicalState, p: PauliLabel, other: LogicalState | None = None) -> complex:
    """``<state| P |other>`` (``other`` defaults to ``state``)."""
    ket = state if other is None else other
    q = p.q
    bra = {tuple(int(x) % q for x in w): amp for w, amp in state.items()}
    total = 0j
    for w, amp in ket.items():
        c = [int(x) % q for x in w]
        target = tuple((ci - ai) % q for ci, ai in zip(c, p.a))
        coeff = bra.get(target)
        if coeff is None:
            continue
        k = sum(ci * bi for ci, bi in zip(c, p.b)) % q
        total += np.conj(coeff) * amp * cmath.exp(2j * math.pi * k / q)
    return complex(total)
