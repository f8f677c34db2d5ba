"""Picks the compiled move-graph kernels when available.

Set ``QECCFORGE_PURE=1`` to force the pure-Python versions.
"""

from __future__ import annotations

import os

from qeccforge import _kernels_py

if os.environ.get("QECCFORGE_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from qeccforge import _ckernels as _impl  # type: ignore[attr-defined,no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

component_labels = _impl.component_labels
canonical_indices = _impl.canonical_indices

__all__ = ["BACKEND", "canonical_indices", "component_labels"]
