"""Kernel backend selection.

The hot numerical kernels (dense Jacobi eigensolver, RK4 monodromy
propagation) exist twice with identical contracts: a Cython extension and
a pure-NumPy fallback.  The compiled module wins when it imports cleanly;
setting ``NODAL_MORSE_PURE=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("NODAL_MORSE_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    COMPILED = False
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        _impl = _kernels_py
        COMPILED = False

jacobi_eigh = _impl.jacobi_eigh
monodromy_rk4 = _impl.monodromy_rk4


def backend_name() -> str:
    return "compiled" if COMPILED else "pure"
