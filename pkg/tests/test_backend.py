import os
import subprocess
import sys

import numpy as np
import pytest

from eigencurve import _backend, _pykernels
from eigencurve.special import _log_diagonal_seed

ck = pytest.importorskip("eigencurve._ckernels", reason="compiled kernels not built")


@pytest.mark.parametrize("l, m", [(0, 0), (1, 1), (7, 3), (300, 120), (4096, 2048), (8192, 10)])
def test_legendre_parity(l, m):
    x = np.ascontiguousarray(np.linspace(-1, 1, 101))
    seed = _log_diagonal_seed(m)
    a = ck.legendre_bar(l, m, x, seed)
    b = _pykernels.legendre_bar(l, m, x, seed)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-300)
    # the scalar fallback path handles tiny inputs
    np.testing.assert_allclose(_pykernels.legendre_bar(l, m, x[:3], seed), a[:3], rtol=1e-12, atol=1e-300)


def test_trig_sums_parity():
    rng = np.random.default_rng(0)
    v = rng.normal(size=500) + 1j * rng.normal(size=500)
    s = np.sort(rng.uniform(0, 6.3, 500))
    nus = np.array([0.0, 1.5, -40.0, 300.0])
    np.testing.assert_allclose(ck.trig_sums(v, s, nus), _pykernels.trig_sums(v, s, nus), rtol=1e-12, atol=1e-11)


def test_backend_selected():
    assert _backend.BACKEND == "cython"


def test_pure_python_switch():
    env = dict(os.environ, EIGENCURVE_PURE_PYTHON="1")
    code = "import eigencurve; print(eigencurve.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
