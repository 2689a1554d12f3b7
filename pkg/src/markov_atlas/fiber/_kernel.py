"""Kernel selection: compiled extension if present, pure Python otherwise.

Set MARKOV_ATLAS_PURE=1 to force the pure-Python kernel (used by the
benchmark and by tests that compare both implementations).
"""

import os

from . import _kernel_py

if os.environ.get("MARKOV_ATLAS_PURE"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernel_py

KERNEL_ID = _impl.KERNEL_ID
CapExceeded = _kernel_py.CapExceeded
group_tables = _impl.group_tables
fiber_tables = _impl.fiber_tables
component_labels = _impl.component_labels
bottleneck_norm = _impl.bottleneck_norm
