from __future__ import annotations

import numpy as np
import pytest

from qeccforge import _kernels_py, kernels
from qeccforge.groundspace import canonicalize, index_to_string, string_to_index

try:
    from qeccforge import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("s,n", [(1, 1), (1, 5), (2, 4), (3, 3)])
def test_python_canonical_matches_reference(s, n):
    canon = _kernels_py.canonical_indices(s, n)
    for idx in range(len(canon)):
        t = index_to_string(idx, s, n)
        assert canon[idx] == string_to_index(canonicalize(t).string, s)


@needs_ext
@pytest.mark.parametrize("s,n", [(1, 1), (1, 6), (2, 3), (2, 5), (3, 4)])
def test_compiled_matches_python(s, n):
    assert np.array_equal(_ckernels.canonical_indices(s, n), _kernels_py.canonical_indices(s, n))
    # labels may differ, the partition may not
    a = np.asarray(_ckernels.component_labels(s, n))
    b = np.asarray(_kernels_py.component_labels(s, n))
    _, ia = np.unique(a, return_inverse=True)
    _, ib = np.unique(b, return_inverse=True)
    pairs = set(zip(ia.tolist(), ib.tolist()))
    assert len(pairs) == len(set(ia.tolist())) == len(set(ib.tolist()))


def test_pure_env_selects_fallback(monkeypatch):
    import importlib

    monkeypatch.setenv("QECCFORGE_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.component_labels is _kernels_py.component_labels
    finally:
        monkeypatch.delenv("QECCFORGE_PURE")
        importlib.reload(kernels)
