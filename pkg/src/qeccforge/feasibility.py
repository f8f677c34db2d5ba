"""Nonnegative nonzero solutions of homogeneous systems ``M x = 0``.

Two independent routes:

* :func:`dines_solve` eliminates one equation at a time. With ``I``/``J`` the
  columns where the current row is positive/negative, every pair ``(i, j)``
  yields the combined column ``a_1i * col_j - a_1j * col_i`` (zero in the
  eliminated row, nonnegative weights); zero-entry columns pass through. Each
  derived column is kept as a nonnegative vector in the original variables, so
  any column left after the last row is already a solution. A row whose
  entries are all nonzero with one sign proves infeasibility.
* :func:`phase_one` is a rational phase-1 simplex (Bland's rule) on
  ``M x = 0, sum(x) = 1, x >= 0``; it is the cross-check oracle and the
  fallback when elimination blows up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_CAP = 10**6
ZERO_TOL = 1e-10


class ColumnBlowup(RuntimeError):
    """Intermediate column count exceeded the cap."""


@dataclass(frozen=True)
class DinesResult:
    x: np.ndarray | None
    blocking_row: int | None = None
    max_columns: int = 0
    method: str = "dines"

    @property
    def feasible(self) -> bool:
        return self.x is not None


def _is_exact(m: np.ndarray) -> bool:
    if m.dtype.kind in "iub":
        return True
    if m.dtype == object:
        return all(isinstance(v, (int, Fraction, np.integer)) for v in m.flat)
    return False


def _integer_rows(m: np.ndarray) -> np.ndarray:
    out = np.empty(m.shape, dtype=object)
    for r in range(m.shape[0]):
        row = [Fraction(v) for v in m[r]]
        scale = math.lcm(*(v.denominator for v in row)) if row else 1
        out[r] = [int(v * scale) for v in row]
    return out


def _normalize_exact(rays: list[np.ndarray]) -> list[np.ndarray]:
    out = []
    for r in rays:
        g = math.gcd(*(int(v) for v in r))
        out.append(r // g if g > 1 else r)
    return out


def _dedupe(rays: list[np.ndarray], exact: bool) -> list[np.ndarray]:
    seen: set = set()
    out = []
    for r in rays:
        key = tuple(r) if exact else tuple(np.round(r, 12))
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def _zero_mask(s: np.ndarray, exact: bool, tol: float) -> np.ndarray:
    if exact:
        return np.array([v == 0 for v in s], dtype=bool)
    scale = np.max(np.abs(s)) if s.size else 0.0
    return np.abs(s) <= tol * scale


def _signs(s: np.ndarray, exact: bool, tol: float) -> np.ndarray:
    zero = _zero_mask(s, exact, tol)
    pos = np.array([v > 0 for v in s], dtype=bool)
    return np.where(zero, 0, np.where(pos, 1, -1))


def _adjacent(support: np.ndarray, i: int, js: np.ndarray) -> np.ndarray:
    """Combinatorial extreme-ray test: no third ray's support fits in ``supp(i) | supp(j)``."""
    union = support[i] | support[js]
    outside = (~union).astype(np.int64)
    # count[k, j] = |supp(k) \ union_j|; k contained iff 0
    count = support.astype(np.int64) @ outside.T
    contained = (count == 0).sum(axis=0)
    return contained <= 2


def dines_solve(
    matrix,
    *,
    cap: int = DEFAULT_CAP,
    zero_tol: float = ZERO_TOL,
    prune: bool = True,
    fallback: bool = True,
) -> DinesResult:
    """Find ``x >= 0, x != 0`` with ``matrix @ x = 0`` by Dines elimination.

    ``prune`` keeps only extreme combined columns (double-description adjacency
    test); without it every ``(i, j)`` pair is formed. Integer and rational
    inputs run in exact integer arithmetic.
    """
    m = np.asarray(matrix)
    if m.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    n_rows, n_cols = m.shape
    if n_cols == 0:
        return DinesResult(None)
    exact = _is_exact(m)
    if exact:
        m = _integer_rows(m) if n_rows else np.zeros((0, n_cols), dtype=object)
        rays = [np.array([1 if i == j else 0 for i in range(n_cols)], dtype=object) for j in range(n_cols)]
    else:
        m = m.astype(float)
        rays = [row for row in np.eye(n_cols)]
    rows_left = list(range(n_rows))
    max_cols = n_cols

    while True:
        ray_mat = np.array(rays, dtype=object if exact else float).reshape(len(rays), n_cols)
        vals = m[rows_left] @ ray_mat.T if rows_left else np.zeros((0, len(rays)))
        signs = np.array([_signs(vals[r], exact, zero_tol) for r in range(len(rows_left))]).reshape(
            len(rows_left), len(rays)
        )
        for r in range(len(rows_left)):
            if np.all(signs[r] > 0) or np.all(signs[r] < 0):
                return DinesResult(None, rows_left[r], max_cols)
        satisfied = np.all(signs == 0, axis=0)
        if satisfied.any():
            x = ray_mat[int(np.argmax(satisfied))]
            return DinesResult(x, None, max_cols)
        # eliminate the first row that still has nonzero entries
        r = next(i for i in range(len(rows_left)) if np.any(signs[i] != 0))
        s = vals[r]
        sg = signs[r]
        pos = np.flatnonzero(sg > 0)
        neg = np.flatnonzero(sg < 0)
        new = [rays[k] for k in np.flatnonzero(sg == 0)]
        if prune:
            if exact:
                support = np.array([[v != 0 for v in ray] for ray in rays], dtype=bool)
            else:
                support = ray_mat > zero_tol * np.max(ray_mat, axis=1, keepdims=True)
        n_new = len(new) + (len(pos) * len(neg) if not prune else 0)
        if n_new > cap:
            break
        for i in pos:
            js = neg[_adjacent(support, i, neg)] if prune else neg
            for j in js:
                new.append(s[i] * rays[j] - s[j] * rays[i])
            if len(new) > cap:
                break
        if len(new) > cap:
            break
        if exact:
            new = _normalize_exact(new)
        else:
            new = [v / v.sum() for v in new]
        rays = _dedupe(new, exact)
        max_cols = max(max_cols, len(rays))
        rows_left = [rr for k, rr in enumerate(rows_left) if k != r]
        if not rows_left:
            return DinesResult(np.array(rays[0]), None, max_cols)

    if not fallback:
        raise ColumnBlowup(f"more than {cap} intermediate columns")
    x = phase_one(np.asarray(matrix))
    return DinesResult(None if x is None else np.array(x, dtype=object), None, max_cols, "oracle")


def dines_feasible(matrix, **kwargs) -> np.ndarray | None:
    """Nonnegative nonzero solution of ``matrix @ x = 0``, or ``None`` if there is none."""
    return dines_solve(matrix, **kwargs).x


def phase_one(matrix) -> list[Fraction] | None:
    """Exact phase-1 simplex for ``M x = 0, 1.x = 1, x >= 0``."""
    m = np.asarray(matrix)
    n_rows, n_cols = m.shape
    if n_cols == 0:
        return None
    a = [[Fraction(v) for v in m[r]] for r in range(n_rows)] + [[Fraction(1)] * n_cols]
    b = [Fraction(0)] * n_rows + [Fraction(1)]
    k = len(a)
    width = n_cols + k
    tab = [a[i] + [Fraction(int(i == j)) for j in range(k)] + [b[i]] for i in range(k)]
    basis = [n_cols + i for i in range(k)]
    cost = [Fraction(0)] * n_cols + [Fraction(1)] * k

    while True:
        reduced = [cost[j] - sum(cost[basis[i]] * tab[i][j] for i in range(k)) for j in range(width)]
        enter = next((j for j in range(width) if reduced[j] < 0), None)
        if enter is None:
            break
        ratios = [(tab[i][-1] / tab[i][enter], basis[i], i) for i in range(k) if tab[i][enter] > 0]
        if not ratios:  # unbounded cannot happen: objective is bounded below by 0
            break
        _, _, piv = min(ratios)
        pv = tab[piv][enter]
        tab[piv] = [v / pv for v in tab[piv]]
        for i in range(k):
            if i != piv and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[piv])]
        basis[piv] = enter

    objective = sum(cost[basis[i]] * tab[i][-1] for i in range(k))
    if objective != 0:
        return None
    x = [Fraction(0)] * n_cols
    for i, var in enumerate(basis):
        if var < n_cols:
            x[var] = tab[i][-1]
    return x
