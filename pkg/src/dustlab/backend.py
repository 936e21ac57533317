"""Kernel backend selection: compiled extension if available, else pure Python.

Set DUSTLAB_BACKEND=python to force the fallback (useful for benchmarking and
for the bit-equivalence tests). The two backends implement identical float64
semantics and are expected to agree bit for bit.
"""

import os

from . import _pycore

if os.environ.get("DUSTLAB_BACKEND", "").lower() == "python":
    kernel = _pycore
    BACKEND_NAME = "python"
else:
    try:
        from . import _core as _compiled
        kernel = _compiled
        BACKEND_NAME = "compiled"
    except ImportError:
        kernel = _pycore
        BACKEND_NAME = "python"


def get_backend() -> str:
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return BACKEND_NAME
