"""Kernel backend selection.

The compiled extension is preferred; the NumPy fallback is bit-identical and
used when the extension is missing or ``BENCH_AUDIT_BACKEND=python`` is set.
"""

import os

from . import _pykernels

TIE_AVERAGE = _pykernels.TIE_AVERAGE
TIE_COMPETITION = _pykernels.TIE_COMPETITION
TIE_DETERMINISTIC = _pykernels.TIE_DETERMINISTIC

_forced = os.environ.get("BENCH_AUDIT_BACKEND", "").strip().lower()

if _forced in ("python", "py"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "compiled"
    except ImportError:
        if _forced in ("compiled", "c"):
            raise
        _impl = _pykernels
        BACKEND = "python"

audit_pass = _impl.audit_pass


def get_backend(name):
    """Fetch a specific backend module by name (for tests and benchmarks)."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
