"""The real constraint matrix A and its kernel.

Rows: an all-ones row, then for every diagonal Pauli ``Z^z`` with
``1 <= wt(z) <= d_Z - 1`` the real and imaginary parts of ``<c|Z^z|c>``.
Columns: the codewords of the input code, in its canonical order.

Each entry is stored exactly as an angle index ``j`` with value
``cos(2 pi j / 4q)``: ``cos(2 pi k/q)`` is ``j = 4k`` and ``sin(2 pi k/q)`` is
``j = 4k - q``. Zero and duplicate rows are detected on these integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from qeccforge.classical import ClassicalCode, Codeword, hamming_ball_volume, q_ary_entropy
from qeccforge.pauli import exponent_array

EXACT_Q = (1, 2, 4)
DEFAULT_REL_TOL = 1e-9

Backend = Literal["exact", "float"]


@dataclass(frozen=True)
class RowLabel:
    """``part`` is ``"ones"`` (then ``z`` is ``None``), ``"re"`` or ``"im"``."""

    part: str
    z: tuple[int, ...] | None = None

    def __str__(self) -> str:
        if self.part == "ones":
            return "ones"
        return f"{self.part}:" + "".join(str(x) if x < 10 else f"[{x}]" for x in self.z)  # type: ignore[union-attr]


@dataclass(frozen=True)
class AMatrix:
    q: int
    n: int
    d_z: int
    rows: tuple[RowLabel, ...]
    cols: tuple[int, ...]
    codewords: tuple[Codeword, ...]
    angles: np.ndarray = field(repr=False)
    n_rows_unpruned: int = 0
    pruned: tuple[dict, ...] = ()

    @property
    def exact(self) -> bool:
        """Entries are exactly 0 or +-1."""
        return self.q in EXACT_Q

    @property
    def shape(self) -> tuple[int, int]:
        return self.angles.shape  # type: ignore[return-value]

    @property
    def entries(self) -> np.ndarray:
        vals = np.cos(2 * np.pi * self.angles / (4 * self.q))
        if self.exact:
            vals = np.rint(vals)
        return vals

    def integer_entries(self) -> np.ndarray:
        if not self.exact:
            raise ValueError(f"entries for q={self.q} are not integers")
        return np.rint(np.cos(2 * np.pi * self.angles / (4 * self.q))).astype(np.int64)

    def restrict(self, columns: list[int]) -> AMatrix:
        """Sub-matrix on positions ``columns`` (positions into ``self.cols``)."""
        return AMatrix(
            self.q,
            self.n,
            self.d_z,
            self.rows,
            tuple(self.cols[i] for i in columns),
            tuple(self.codewords[i] for i in columns),
            self.angles[:, columns],
            self.n_rows_unpruned,
            self.pruned,
        )


def _canonical_angles(j: np.ndarray, q: int) -> np.ndarray:
    j = np.mod(j, 4 * q)
    return np.minimum(j, 4 * q - j)


def build_a_matrix(code: ClassicalCode, d_z: int, *, prune: bool = True) -> AMatrix:
    if d_z < 1:
        raise ValueError("d_Z must be at least 1")
    q, n = code.q, code.n
    res = code.residues()
    m = len(code)
    z = exponent_array(q, n, d_z - 1) if d_z > 1 else np.zeros((0, n), dtype=np.int64)
    k = np.mod(z @ res.T, q)

    labels = [RowLabel("ones")]
    blocks = [np.zeros((1, m), dtype=np.int64)]
    re_rows = _canonical_angles(4 * k, q)
    im_rows = _canonical_angles(4 * k - q, q)
    inter = np.empty((2 * len(z), m), dtype=np.int64)
    inter[0::2] = re_rows
    inter[1::2] = im_rows
    blocks.append(inter)
    for zz in z:
        t = tuple(int(x) for x in zz)
        labels.append(RowLabel("re", t))
        labels.append(RowLabel("im", t))
    angles = np.vstack(blocks)
    n_full = angles.shape[0]

    pruned: list[dict] = []
    if prune:
        keep: list[int] = []
        seen: dict[bytes, int] = {}
        for r in range(n_full):
            row = angles[r]
            if np.all(row == q):
                pruned.append({"row": str(labels[r]), "reason": "zero"})
                continue
            key = row.tobytes()
            if key in seen:
                pruned.append({"row": str(labels[r]), "reason": "duplicate", "of": str(labels[seen[key]])})
                continue
            seen[key] = r
            keep.append(r)
        angles = angles[keep]
        labels = [labels[r] for r in keep]

    return AMatrix(
        q=q,
        n=n,
        d_z=d_z,
        rows=tuple(labels),
        cols=tuple(range(m)),
        codewords=code.codewords,
        angles=angles,
        n_rows_unpruned=n_full,
        pruned=tuple(pruned),
    )


def expected_row_count(q: int, n: int, d_z: int) -> int:
    """Rows before pruning: ``2 V_q(d_Z - 1) - 1``."""
    return 2 * hamming_ball_volume(q, n, d_z - 1) - 1


# --- kernels ------------------------------------------------------------------


@dataclass(frozen=True)
class KernelBasis:
    vectors: tuple[np.ndarray, ...]
    backend: Backend
    tol: float

    @property
    def dim(self) -> int:
        return len(self.vectors)


def rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    a = [list(r) for r in matrix]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ri = a[i]
                a[i] = [x - f * y for x, y in zip(ri, a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace_exact(matrix: np.ndarray | list[list[int]]) -> list[list[Fraction]]:
    """Rational nullspace basis, one vector per free column in column order."""
    rows = [[Fraction(int(x)) if not isinstance(x, Fraction) else x for x in r] for r in matrix]
    n_cols = len(rows[0]) if rows else 0
    red, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def nullspace_float(matrix: np.ndarray, rel_tol: float = DEFAULT_REL_TOL) -> list[np.ndarray]:
    """Right singular vectors with ``sigma <= rel_tol * sigma_max``, in index order."""
    matrix = np.asarray(matrix, dtype=float)
    n_cols = matrix.shape[1]
    if matrix.shape[0] == 0:
        return list(np.eye(n_cols))
    _, sing, vh = np.linalg.svd(matrix, full_matrices=True)
    smax = sing[0] if len(sing) else 0.0
    rank = int(np.sum(sing > rel_tol * smax)) if smax > 0 else 0
    return [vh[i].copy() for i in range(rank, n_cols)]


def kernel(a: AMatrix | np.ndarray, backend: str = "auto", rel_tol: float = DEFAULT_REL_TOL) -> KernelBasis:
    """Kernel basis; ``auto`` picks the exact backend when every entry is 0 or +-1."""
    if isinstance(a, AMatrix):
        exact_ok = a.exact
        dense = a.entries
    else:
        dense = np.asarray(a)
        exact_ok = bool(np.all(np.isin(dense, (-1, 0, 1))))
    if backend == "auto":
        backend = "exact" if exact_ok else "float"
    if backend == "exact":
        if not exact_ok:
            raise ValueError("exact backend needs entries in {0, +-1} (q in {1, 2, 4})")
        vecs = nullspace_exact(np.rint(dense).astype(np.int64).tolist())
        return KernelBasis(tuple(np.array(v, dtype=object) for v in vecs), "exact", 0.0)
    if backend != "float":
        raise ValueError(f"unknown backend {backend!r}")
    return KernelBasis(tuple(nullspace_float(dense, rel_tol)), "float", rel_tol)


def residual(a: AMatrix | np.ndarray, v: np.ndarray) -> float:
    dense = a.entries if isinstance(a, AMatrix) else np.asarray(a, dtype=float)
    return float(np.linalg.norm(dense @ np.asarray(v, dtype=float)))


def rate_bound(q: int, n: int, d_z: int) -> float:
    """Asymptotic lower bound ``1 - 2 Ent_q(d_Z/n)`` on ``(1/n) log_q(columns/rows)``."""
    ratio = d_z / n
    if not 0.0 <= ratio <= (q - 1) / q:
        raise ValueError(f"d_Z/n = {ratio} outside [0, {(q - 1) / q}]")
    return 1.0 - 2.0 * q_ary_entropy(q, ratio)
