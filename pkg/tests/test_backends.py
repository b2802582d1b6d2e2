import importlib
import math
import subprocess
import sys

import numpy as np
import pytest

from pvlik import _kernels_py
from pvlik.tdist import central_t_cdf

try:
    from pvlik import _kernels_cy
except ImportError:
    _kernels_cy = None

needs_cython = pytest.mark.skipif(_kernels_cy is None,
                                  reason="compiled kernel not built")

T_GRID = np.concatenate([
    np.linspace(-40.0, 40.0, 401),
    np.array([-1e-8, 0.0, 1e-8, 1e6, -1e6]),
])
DFS = [1.0, 2.0, 8.0, 18.0, 199.0]


def _reference_two_tailed(t, df):
    # scalar reference path, independent of the vectorized kernels
    return 2.0 * central_t_cdf(-abs(t), df)


@pytest.mark.parametrize("kernels", [
    pytest.param(_kernels_py, id="python"),
    pytest.param(_kernels_cy, id="cython", marks=needs_cython),
])
def test_two_tailed_p_matches_scalar_reference(kernels):
    for df in DFS:
        got = kernels.two_tailed_p(T_GRID, df)
        want = np.array([_reference_two_tailed(t, df) for t in T_GRID])
        np.testing.assert_allclose(got, want, rtol=5e-12, atol=1e-300)


@needs_cython
def test_backends_agree():
    for df in DFS:
        py = _kernels_py.two_tailed_p(T_GRID, df)
        cy = _kernels_cy.two_tailed_p(T_GRID, df)
        np.testing.assert_allclose(py, cy, rtol=5e-12, atol=1e-300)


@needs_cython
def test_betainc_vec_agrees():
    x = np.linspace(1e-12, 1.0 - 1e-12, 257)
    for a, b in [(0.5, 9.0), (4.0, 4.0), (0.5, 0.5), (20.0, 1.5)]:
        py = _kernels_py.betainc_vec(a, b, x)
        cy = _kernels_cy.betainc_vec(a, b, x)
        np.testing.assert_allclose(py, cy, rtol=5e-12, atol=1e-300)
        assert py[0] < 1e-4 and abs(py[-1] - 1.0) < 1e-4
        assert np.all(np.diff(py) >= 0.0)


def test_env_var_forces_python_backend():
    code = ("import pvlik; print(pvlik.BACKEND)")
    out = subprocess.run([sys.executable, "-c", code],
                         env={"PVLIK_PURE_PYTHON": "1", "PATH": "/usr/bin"},
                         capture_output=True, text=True, cwd="/")
    assert out.stdout.strip() == "python"


def test_backend_names():
    assert _kernels_py.BACKEND_NAME == "python"
    if _kernels_cy is not None:
        assert _kernels_cy.BACKEND_NAME == "cython"
