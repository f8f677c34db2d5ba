"""Pure-Python versions of the move-graph kernels.

States of ``n`` spins with symbols ``-s..s`` are indexed by their base-(2s+1)
digits ``symbol + s``, most significant first, so index order is lexicographic.
"""

from __future__ import annotations

import numpy as np


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def component_labels(s: int, n: int) -> np.ndarray:
    """Union-find root of every state under the local moves."""
    base = 2 * s + 1
    total = base**n
    parent = list(range(total))
    weights = [base ** (n - 1 - i) for i in range(n)]
    for idx in range(total):
        digits = []
        rem = idx
        for w in weights:
            digits.append(rem // w - s)
            rem %= w
        for i in range(n - 1):
            a, b = digits[i], digits[i + 1]
            wa, wb = weights[i], weights[i + 1]
            targets = []
            if a == 0 and b != 0:
                targets.append(idx + b * wa - b * wb)
            elif b == 0 and a != 0:
                targets.append(idx - a * wa + a * wb)
            elif a == 0 and b == 0:
                targets.extend(idx + m * wa - m * wb for m in range(1, s + 1))
            for t in targets:
                ra, rb = _find(parent, idx), _find(parent, t)
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
    return np.array([_find(parent, i) for i in range(total)], dtype=np.int64)


def canonical_indices(s: int, n: int) -> np.ndarray:
    """Index of the canonical form of every state (zeros dropped, ``m,-m`` cancelled)."""
    base = 2 * s + 1
    total = base**n
    weights = [base ** (n - 1 - i) for i in range(n)]
    out = np.empty(total, dtype=np.int64)
    for idx in range(total):
        stack: list[int] = []
        rem = idx
        for w in weights:
            v = rem // w - s
            rem %= w
            if v == 0:
                continue
            if stack and stack[-1] > 0 and stack[-1] == -v:
                stack.pop()
            else:
                stack.append(v)
        code = 0
        for i in range(n):
            code = code * base + (stack[i] if i < len(stack) else 0) + s
        out[idx] = code
    return out
