"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
kernel is the fallback. Set SRSKIT_PURE=1 to force the fallback (used by
the test suite and the benchmark to compare backends).
"""

import os

from . import pure

if os.environ.get("SRSKIT_PURE"):
    _impl = pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

BACKEND = _impl.BACKEND_NAME
find_redex = _impl.find_redex
normalize_bytes = _impl.normalize_bytes
suffix_push = _impl.suffix_push

__all__ = ["BACKEND", "find_redex", "normalize_bytes", "suffix_push", "pure"]
