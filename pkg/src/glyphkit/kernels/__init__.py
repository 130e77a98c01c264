"""Hot raster kernels: compiled extension when built, numpy fallback otherwise.

`BACKEND` reports which implementation is live ("compiled" or "python").
Both expose the same four functions with identical semantics; the parity
test suite compares them directly.  Set GLYPHKIT_PURE=1 to force the
fallback even when the extension is built.
"""

import os

from . import pyk

_impl = None
if not os.environ.get("GLYPHKIT_PURE"):
    try:
        from . import _ck as _impl
    except ImportError:      # extension not built; pure fallback
        _impl = None
if _impl is not None:
    BACKEND = "compiled"
else:
    _impl = pyk
    BACKEND = "python"

label_ink = _impl.label_ink
resample_nearest = _impl.resample_nearest
zone_means = _impl.zone_means
sqdist_matrix = _impl.sqdist_matrix

__all__ = ["BACKEND", "label_ink", "resample_nearest", "zone_means",
           "sqdist_matrix", "pyk"]
