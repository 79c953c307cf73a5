"""Backend selection for the sparse kernels.

The compiled extension is used when it imports; otherwise the
pure-Python module takes over.  Setting ``PVIFAM_KERNELS=python`` forces
the pure-Python module.  ``use_backend`` switches explicitly and
exists for benchmarks and cross-checking tests.
"""

import os

from . import _kernels_py

try:
    from . import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

_active = _kernels_c if _kernels_c is not None else _kernels_py
if os.environ.get("PVIFAM_KERNELS") == "python":
    _active = _kernels_py


def backend_name():
    """Name of the active backend, ``"compiled"`` or ``"python"``."""
    return "compiled" if _active is _kernels_c else "python"


def compiled_available():
    return _kernels_c is not None


def use_backend(name):
    """Select ``"compiled"`` or ``"python"``; returns the previous name."""
    global _active
    prev = backend_name()
    if name == "compiled":
        if _kernels_c is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _kernels_c
    elif name == "python":
        _active = _kernels_py
    else:
        raise ValueError(f"unknown backend {name!r}")
    return prev


def mul(a, b):
    return _active.mul(a, b)


def addmul(a, b, c, shift):
    return _active.addmul(a, b, c, shift)


def divexact(p, q, shifts, mask):
    return _active.divexact(p, q, shifts, mask)
