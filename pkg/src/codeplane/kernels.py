"""Hamming-distance kernel dispatch.

The hot inner loops live either in the compiled extension
(``codeplane._distkern``, built from Cython) or in the numpy twin
(``codeplane._kernels_py``). The compiled module is preferred when
importable; set CODEPLANE_KERNELS=py or =c to force a backend.
Both backends are kept result-identical (see tests/test_kernels.py and
benchmarks/bench_kernels.py).
"""

from __future__ import annotations

import os

_forced = os.environ.get("CODEPLANE_KERNELS", "").strip().lower()

if _forced == "py":
    from . import _kernels_py as _impl

    BACKEND = "python"
elif _forced == "c":
    from . import _distkern as _impl  # type: ignore[no-redef]

    BACKEND = "c"
else:
    try:
        from . import _distkern as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

hamming = _impl.hamming
min_pairwise = _impl.min_pairwise
min_to_set = _impl.min_to_set
all_at_least = _impl.all_at_least


def available_backends():
    """Names of importable backends, compiled one first if present."""
    names = []
    try:
        from . import _distkern  # noqa: F401

        names.append("c")
    except ImportError:
        pass
    names.append("python")
    return names
