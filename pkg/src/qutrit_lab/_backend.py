"""Kernel backend selection.

The compiled ``_kernels`` module is used when it imports; otherwise the NumPy
kernels in ``_pykernels`` are used. Set ``QUTRIT_LAB_BACKEND=python`` to force
the fallback at import, or call :func:`use` at runtime.
"""
import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _pykernels}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

if os.environ.get("QUTRIT_LAB_BACKEND", "").strip().lower() in ("python", "numpy", "py"):
    name = "python"
else:
    name = "compiled" if _compiled is not None else "python"
kernels = _BACKENDS[name]
log.debug("qutrit_lab kernel backend: %s", name)


def available():
    """Names of the kernel backends importable in this environment."""
    return sorted(_BACKENDS)


def use(backend):
    """Switch the active kernel backend; returns the previously active name."""
    global kernels, name
    if backend not in _BACKENDS:
        raise ValueError(f"unknown or unavailable backend {backend!r}; have {available()}")
    previous = name
    name = backend
    kernels = _BACKENDS[backend]
    return previous
