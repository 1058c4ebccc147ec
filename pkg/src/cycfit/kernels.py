"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``CYCFIT_PURE_PYTHON=1`` to force the pure implementation (used by the
benchmark and by tests that compare the two implementations).
"""

import os

from . import _kernels_py

if os.environ.get("CYCFIT_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

IMPL = _impl.IMPL
conv_cyclic = _impl.conv_cyclic
conv_cyclic_mod = _impl.conv_cyclic_mod
weighted_power_product = _impl.weighted_power_product
