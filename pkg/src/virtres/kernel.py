"""Kernel selection: compiled ``_kernel`` when importable, else ``_kernel_py``.

Set ``VIRTRES_PURE_PYTHON=1`` to force the fallback.  The compiled prime-field
path uses 64-bit products, so moduli of 2**31 and above always go through the
Python kernel.
"""

import os

from . import _kernel_py

compiled = None
if os.environ.get("VIRTRES_PURE_PYTHON") != "1":
    try:
        from . import _kernel as compiled
    except ImportError:
        compiled = None

_MAX_FAST_MODULUS = 2 ** 31


def for_modulus(p):
    if compiled is not None and p < _MAX_FAST_MODULUS:
        return compiled
    return _kernel_py


def backend_name():
    return "cython" if compiled is not None else "python"
