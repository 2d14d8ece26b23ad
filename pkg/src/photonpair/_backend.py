"""Pick the compiled kernels when available, else the numpy fallback.

Set ``PHOTONPAIR_BACKEND=python`` to force the fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

AVAILABLE: dict[str, ModuleType] = {"python": _fallback}
if _compiled is not None:
    AVAILABLE["cython"] = _compiled

_requested = os.environ.get("PHOTONPAIR_BACKEND", "").strip().lower()
if _requested and _requested not in AVAILABLE:
    raise ImportError(f"PHOTONPAIR_BACKEND={_requested!r} unavailable; have {sorted(AVAILABLE)}")
NAME = _requested or ("cython" if _compiled is not None else "python")
kernels = AVAILABLE[NAME]


def get(name: str | None = None) -> ModuleType:
    if name is None:
        return kernels
    try:
        return AVAILABLE[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(AVAILABLE)}") from None
