"""Selects the compiled search kernel when available.

Set ``KBRANCH_PURE_PYTHON=1`` to force the pure-Python twin.
"""

import os

from kbranch import _kernels_py

if os.environ.get("KBRANCH_PURE_PYTHON"):
    search_assignments = _kernels_py.search_assignments
    BACKEND = "python"
else:
    try:
        from kbranch._kernels import search_assignments
        BACKEND = "cython"
    except ImportError:
        search_assignments = _kernels_py.search_assignments
        BACKEND = "python"

__all__ = ["BACKEND", "search_assignments"]
