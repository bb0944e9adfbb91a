"""Pick the sweep-kernel implementation at import time.

The compiled ``_kernels`` extension is used when it was built; otherwise the
pure-Python ``_kernels_py``. Set ``PSL_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("PSL_BACKEND", "").lower() == "python":
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"

# elements below this bound keep every pairwise product inside int64
KERNEL_ELEMENT_LIMIT = 1 << 31

__all__ = ["kernels", "BACKEND", "KERNEL_ELEMENT_LIMIT"]
