"""Backend selection: compiled kernels when available, pure Python otherwise.

Set KGROUPS_PURE=1 to force the pure backend (used by the parity tests and the
benchmark).  Everything downstream imports the chosen module as `ops`.
"""

import os

from . import _wordops_py

if os.environ.get("KGROUPS_PURE"):
    ops = _wordops_py
else:
    try:
        from . import _wordops_c as ops  # type: ignore[no-redef]
    except ImportError:
        ops = _wordops_py

BACKEND = ops.BACKEND
