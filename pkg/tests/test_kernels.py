import os
import subprocess
import sys
import random

import numpy as np
import pytest

from knotsquares import _kernels
from knotsquares import diagrams as dg


def _notations(seed, count, max_crossings):
    rng = random.Random(seed)
    for _ in range(count):
        cf = []
        while sum(cf) < max_crossings - 3:
            cf.append(rng.randint(1, 3))
        yield cf


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")
def test_backends_agree():
    for cf in _notations(1, 30, 14):
        arcs = dg.compile_rational(cf).arcs_array()
        assert _kernels.count_monocyclic(arcs, "numba") == _kernels.count_monocyclic(arcs, "numpy")
        np.testing.assert_array_equal(
            _kernels.monocyclic_masks(arcs, "numba"), _kernels.monocyclic_masks(arcs, "numpy")
        )


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_counts_match_determinant(backend):
    if backend == "numba" and not _kernels.HAVE_NUMBA:
        pytest.skip("numba unavailable")
    for cf in _notations(2, 10, 12):
        d = dg.compile_rational(cf)
        assert _kernels.count_monocyclic(d.arcs_array(), backend) == dg.goeritz_det(d)


def test_empty_diagram():
    assert _kernels.count_monocyclic(np.zeros((0, 4), dtype=np.int64)) == 1


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.count_monocyclic(dg.compile_rational([3]).arcs_array(), "fortran")


def test_env_flag_selects_numpy():
    env = dict(os.environ, KNOTSQUARES_DISABLE_NUMBA="1")
    code = "from knotsquares import _kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
