"""Select the compiled kernels when available.

Set ``EIGENCURVE_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _pykernels

if os.environ.get("EIGENCURVE_PURE_PYTHON"):
    _ck = None
else:
    try:
        from . import _ckernels as _ck
    except ImportError:
        _ck = None

if _ck is not None:
    legendre_bar = _ck.legendre_bar
    trig_sums = _ck.trig_sums
    BACKEND = "cython"
else:
    legendre_bar = _pykernels.legendre_bar
    trig_sums = _pykernels.trig_sums
    BACKEND = "python"
