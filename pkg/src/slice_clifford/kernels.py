"""Backend selection for the hot kernels.

The compiled extension ``_ckernels`` is used when it was built and
``SLICE_CLIFFORD_PURE`` is unset (or ``0``); otherwise the pure-Python
module ``_pykernels`` is used. Both expose identical functions.
"""

import os

from . import _pykernels

if os.environ.get("SLICE_CLIFFORD_PURE", "0") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

S_SIGN = _pykernels.S_SIGN
S_IDX = _pykernels.S_IDX
S_CONJ = _pykernels.S_CONJ

rad_mul = _impl.rad_mul
blade_sign = _impl.blade_sign
scalar_add = _impl.scalar_add
scalar_mul = _impl.scalar_mul
poly_add = _impl.poly_add
poly_scale = _impl.poly_scale
poly_mul = _impl.poly_mul
poly_left_basis = _impl.poly_left_basis
poly_dirac = _impl.poly_dirac
poly_dx0 = _impl.poly_dx0
poly_dr = _impl.poly_dr
poly_euler = _impl.poly_euler
poly_r_dr = _impl.poly_r_dr
poly_laplacian = _impl.poly_laplacian
poly_conj = _impl.poly_conj
poly_pair_project = _impl.poly_pair_project
mv_mul = _impl.mv_mul


def load(name):
    """Return the kernel module for ``"python"`` or ``"cython"``.

    Used by the benchmark and the backend-parity tests.
    """
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels  # type: ignore[attr-defined]

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
