"""Backend selection for the hot loops.

The compiled extension is used when it imports; set ``DRGMOTION_PURE_PYTHON=1``
to force the numpy fallback. ``BACKEND`` names the active choice.
"""

import os

from . import _fallback

if os.environ.get("DRGMOTION_PURE_PYTHON"):
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _fallback

BACKEND = "compiled" if _impl is not _fallback else "python"

BACKENDS = {"python": _fallback}
if BACKEND == "compiled":
    BACKENDS["compiled"] = _impl

min_boundary_exhaustive = _impl.min_boundary_exhaustive
boundary_sizes = _impl.boundary_sizes
edge_geodesic_loads = _impl.edge_geodesic_loads
extend_automorphism = _impl.extend_automorphism
