"""Kernel backend selection.

The compiled Cython kernel is preferred when present; set the environment
variable PVLIK_PURE_PYTHON=1 to force the numpy fallback (used by the
benchmark and the backend-agreement tests).
"""

import os

from . import _kernels_py

if os.environ.get("PVLIK_PURE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND_NAME
