"""Selects the compiled or pure-Python modular Smith kernel at import time.

Set ``RAMFORGE_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _modsnf_py

try:
    from . import _modsnf as _compiled
except ImportError:  # extension not built
    _compiled = None

_MAX_COMPILED_MODULUS = 1 << 62

BACKEND = "compiled" if _compiled is not None and not os.environ.get("RAMFORGE_PURE_PYTHON") else "python"


def available_backends():
    return ["python"] + (["compiled"] if _compiled is not None else [])


def modular_smith(rows, nrows, ncols, modulus, p, limit, backend=None):
    backend = backend or BACKEND
    if backend == "compiled" and _compiled is not None and modulus < _MAX_COMPILED_MODULUS:
        return _compiled.modular_smith(rows, nrows, ncols, modulus, p, limit)
    return _modsnf_py.modular_smith([list(r) for r in rows], nrows, ncols, modulus, p, limit)
