import subprocess
import sys

import numpy as np
import pytest

from conftest import random_field
from staggered_walk import kernels
from staggered_walk.state import InitialState, make_initial

needs_cython = pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="compiled kernels not built")


def test_default_backend_is_available():
    assert kernels.DEFAULT_BACKEND in kernels.BACKENDS
    assert kernels.get_backend() is kernels.BACKENDS[kernels.DEFAULT_BACKEND]


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@needs_cython
@pytest.mark.parametrize("periodic", [False, True])
def test_backends_bit_identical(periodic):
    f = random_field(5, circle=periodic, n_sites=64 if periodic else 400, n_lo=-200, pad=150)
    out = []
    for name in ("python", "cython"):
        psi = f.amplitudes.copy()
        assert kernels.get_backend(name).coinless_steps(psi, 37, periodic) == 37
        out.append(psi)
    assert np.array_equal(out[0], out[1])


@needs_cython
def test_half_steps_identical():
    f = random_field(9, circle=True, n_sites=32)
    for fn in ("half_step_odd",):
        a, b = f.amplitudes.copy(), f.amplitudes.copy()
        getattr(kernels.BACKENDS["python"], fn)(a)
        getattr(kernels.BACKENDS["cython"], fn)(b)
        assert np.array_equal(a, b)
    for periodic in (False, True):
        a, b = f.amplitudes.copy(), f.amplitudes.copy()
        kernels.BACKENDS["python"].half_step_even(a, periodic)
        kernels.BACKENDS["cython"].half_step_even(b, periodic)
        assert np.array_equal(a, b)


@needs_cython
def test_wall_and_classical_agree():
    f = make_initial(InitialState.symmetric(), t_max=60)
    res = []
    for name in ("python", "cython"):
        psi = f.amplitudes.copy()
        absorbed = np.zeros(60)
        kernels.get_backend(name).wall_steps(psi, 60, -f.n_lo, absorbed)
        res.append((psi, absorbed))
    assert np.array_equal(res[0][0], res[1][0])
    assert np.abs(res[0][1] - res[1][1]).max() < 1e-16

    p = np.zeros(101)
    p[50] = 1.0
    a, b = p.copy(), p.copy()
    kernels.BACKENDS["python"].classical_steps(a, 40)
    kernels.BACKENDS["cython"].classical_steps(b, 40)
    assert np.array_equal(a, b)


def test_overflow_reports_completed_steps(backend):
    f = make_initial(InitialState.origin(), t_max=2)
    psi = f.amplitudes.copy()
    done = kernels.get_backend(backend).coinless_steps(psi, 50, False)
    assert 2 <= done < 50


def test_fallback_selected_without_extension():
    code = (
        "import sys; sys.modules['staggered_walk._ckernels'] = None\n"
        "from staggered_walk import kernels, evolve, make_initial, InitialState\n"
        "assert kernels.DEFAULT_BACKEND == 'python' and 'cython' not in kernels.BACKENDS\n"
        "f = evolve(make_initial(InitialState.origin(), t_max=3), 3)\n"
        "print(kernels.DEFAULT_BACKEND)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
