"""Curve arithmetic backends.

Two interchangeable implementations expose the same flat function table:

* ``native`` wraps the Rust ``py_arkworks_bls12381`` extension;
* ``python`` is a pure-Python path on ``py_ecc``.

The process-wide choice is made once at import from ``REFLOW_BACKEND``
(``native``, ``python`` or ``auto``; default ``auto`` prefers native).
Encodings are byte-identical across backends, so objects serialized under
one can be loaded under the other.
"""

import importlib
import logging
import os

log = logging.getLogger(__name__)

BACKENDS = ("native", "python")
_MODULES = {"native": "reflow.backends.native", "python": "reflow.backends.pure"}


def load(name):
    """Import and return the backend module called *name*."""
    if name not in _MODULES:
        raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")
    return importlib.import_module(_MODULES[name])


def available():
    names = []
    for name in BACKENDS:
        try:
            load(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select():
    wanted = os.environ.get("REFLOW_BACKEND", "auto").strip().lower() or "auto"
    if wanted != "auto":
        return load(wanted)
    try:
        return load("native")
    except ImportError:
        log.warning("py_arkworks_bls12381 not importable; using pure-Python backend")
        return load("python")


active = _select()
