"""Kernel backend selection.

The compiled ``_core`` extension is used when importable; otherwise the
numpy/Python kernels in ``_purepy``. ``ISOCLEAN_BACKEND=python`` forces the
fallback.
"""
import os

from isoclean import _purepy

_AVAILABLE = {"python": _purepy}
try:
    from isoclean import _core
except ImportError:  # extension not built
    _core = None
else:
    _AVAILABLE["cython"] = _core

_active = _AVAILABLE.get("cython", _purepy)
if os.environ.get("ISOCLEAN_BACKEND"):
    _active = _AVAILABLE[os.environ["ISOCLEAN_BACKEND"]]


def available():
    return sorted(_AVAILABLE)


def kernels():
    return _active


def name():
    return _active.NAME


def set_backend(backend):
    """Switch the active backend by name; returns the previous name."""
    global _active
    if backend not in _AVAILABLE:
        raise ValueError(f"backend {backend!r} unavailable; have {available()}")
    previous = _active.NAME
    _active = _AVAILABLE[backend]
    return previous
