"""Kernel backend selection.

The compiled extension is used when it imports; otherwise (or when the
environment variable ``Z3CONN_PURE_PYTHON`` is set to a non-empty value)
the pure-Python twins in ``_pykernels`` are used.  ``BACKEND`` names the
active one.
"""

from __future__ import annotations

import os

from . import _pykernels as python

compiled = None
if not os.environ.get("Z3CONN_PURE_PYTHON"):
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else python
BACKEND = "compiled" if compiled is not None else "python"

sweep_boundaries = _impl.sweep_boundaries
gray_boundaries = _impl.gray_boundaries
orientation_boundaries = _impl.orientation_boundaries
