"""Kernel selection: compiled extension if available, pure Python otherwise.

Set LATSEC_FORCE_PURE=1 to skip the compiled kernel (used by tests and
benchmarks to exercise both code paths).
"""

import os

from .errors import SearchTooLarge
from . import pure

if os.environ.get("LATSEC_FORCE_PURE") == "1":
    _impl = pure
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = pure

IS_COMPILED = _impl.IS_COMPILED

enumerate_upto = _impl.enumerate_upto
nearest_point = _impl.nearest_point
nearest_point_batch = _impl.nearest_point_batch

__all__ = [
    "SearchTooLarge",
    "IS_COMPILED",
    "enumerate_upto",
    "nearest_point",
    "nearest_point_batch",
    "pure",
]
