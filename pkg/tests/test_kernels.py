"""The compiled and pure-Python kernels must agree bit for bit on exact results."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermspec import _kernels, _pykernels
from hermspec.spectral import graph_parts
from strategies import mixed_graphs

try:
    from hermspec import _ckernels
except ImportError:  # pragma: no cover - only without a compiler
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="compiled"))

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


@pytest.mark.parametrize("k", BACKENDS)
def test_p3_charpoly_and_rank(k):
    re = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    im = [[0] * 3 for _ in range(3)]
    assert list(k.charpoly(re, im)) == [0, -2, 0, 1]
    assert k.rank(re, im) == 2


@pytest.mark.parametrize("k", BACKENDS)
def test_empty_matrix(k):
    assert list(k.charpoly([], [])) == [1]
    assert k.rank([], []) == 0


@needs_c
@given(mixed_graphs(max_n=10))
def test_charpoly_rank_backends_agree(D):
    re, im = graph_parts(D)
    assert list(_ckernels.charpoly(re, im)) == list(_pykernels.charpoly(re, im))
    assert _ckernels.rank(re, im) == _pykernels.rank(re, im)


@needs_c
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_census_backends_agree(n):
    total = 4 ** (n * (n - 1) // 2)
    assert [tuple(p) for p in _ckernels.census_charpolys(n, 0, total)] == [
        tuple(p) for p in _pykernels.census_charpolys(n, 0, total)
    ]
    assert list(_ckernels.census_ranks(n, 0, total)) == list(_pykernels.census_ranks(n, 0, total))


@needs_c
def test_census_slice_n5_agrees():
    start, stop = 500_000, 501_000
    assert [tuple(p) for p in _ckernels.census_charpolys(5, start, stop)] == [
        tuple(p) for p in _pykernels.census_charpolys(5, start, stop)
    ]


@needs_c
@given(st.integers(2, 12), st.integers(0, 2**31))
def test_jacobi_backends_agree(n, seed):
    r = np.random.default_rng(seed)
    a = r.standard_normal((n, n))
    a = (a + a.T) / 2
    x, y = a.copy(), a.copy()
    _ckernels.jacobi_sweeps(x, 1e-12, 100)
    _pykernels.jacobi_sweeps(y, 1e-12, 100)
    ex = np.sort(np.diag(x))
    assert np.allclose(ex, np.sort(np.diag(y)), atol=1e-10)
    assert np.allclose(ex, np.linalg.eigvalsh(a), atol=1e-10)


def test_dispatch_falls_back_outside_compiled_envelope():
    # entries of modulus 2 are outside the compiled kernels' unit-entry envelope
    re = [[0, 2], [2, 0]]
    im = [[0, 0], [0, 0]]
    assert list(_kernels.charpoly(re, im)) == [-4, 0, 1]
    n = 12
    re = [[1 if abs(u - v) == 1 else 0 for v in range(n)] for u in range(n)]
    im = [[0] * n for _ in range(n)]
    assert _kernels.rank(re, im) == 12


def test_pure_backend_forced_by_environment():
    env = dict(os.environ, HERMSPEC_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import hermspec._kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_pure_backend_cli_matches(tmp_path):
    env = dict(os.environ, HERMSPEC_PURE="1")
    cmd = [sys.executable, "-m", "hermspec", "table", "--max", "9", "--markdown"]
    pure = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout
    default = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert pure == default


def test_benchmark_script_runs():
    bench = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "bench_kernels.py")
    out = subprocess.run(
        [sys.executable, bench, "--repeat", "1", "--census-n", "3"], capture_output=True, text=True, check=True
    ).stdout
    assert out.splitlines()[0].startswith("kernel") and len(out.splitlines()) == 5
