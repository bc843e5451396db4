"""Kernel selection: prefer the compiled cone-sum core, fall back to the
pure-Python implementation at import time.
"""

from __future__ import annotations

from . import _zcore_py

pure_zeta12_times = _zcore_py.zeta12_times

try:
    from . import _zcore  # compiled extension, optional

    zeta12_times = _zcore.zeta12_times
    HAVE_COMPILED = True
except ImportError:
    zeta12_times = pure_zeta12_times
    HAVE_COMPILED = False
