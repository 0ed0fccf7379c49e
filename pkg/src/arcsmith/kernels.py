"""Kernel backend selection.

The compiled extension is preferred when importable; otherwise the
pure-Python twin is used. ARCSMITH_PURE_PYTHON=1 forces the fallback
(useful for the backend-equivalence tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _purekernels

if os.environ.get("ARCSMITH_PURE_PYTHON") == "1":
    _impl = _purekernels
else:
    try:
        from . import _fastkernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _purekernels

BACKEND: str = _impl.BACKEND_NAME

label_components = _impl.label_components
flood_fill = _impl.flood_fill
translation_search = _impl.translation_search
mirror_search = _impl.mirror_search
rotation_search = _impl.rotation_search
