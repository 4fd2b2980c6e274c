"""Grid kernels with a compiled core and a numpy fallback.

The compiled module is used when it imports; set ``BLOCHLAB_PURE=1`` to force
the fallback.  ``BACKEND`` names the active implementation and
:func:`get_backend` hands out either one explicitly (tests and the benchmark
compare them).
"""
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

if _ckernels is not None and os.environ.get("BLOCHLAB_PURE", "") in ("", "0"):
    _active = _ckernels
    BACKEND = "compiled"
else:
    _active = _pykernels
    BACKEND = "python"


def available_backends():
    return sorted(_BACKENDS)


def get_backend(name=None):
    if name is None:
        return _active
    return _BACKENDS[name]


mobius_sum = _active.mobius_sum
pole_sum = _active.pole_sum
blaschke_eval = _active.blaschke_eval
separation_logs = _active.separation_logs

__all__ = [
    "BACKEND", "available_backends", "get_backend",
    "mobius_sum", "pole_sum", "blaschke_eval", "separation_logs",
]
