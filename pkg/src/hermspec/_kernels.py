"""Kernel backend selection.

The compiled extension ``_ckernels`` is used when it imports and the input is
inside its exact-arithmetic envelope; otherwise the pure-Python kernels run.
Set ``HERMSPEC_PURE=1`` to force the pure-Python backend.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels as py

try:
    if os.environ.get("HERMSPEC_PURE", "") not in ("", "0"):
        raise ImportError("pure-Python backend forced by HERMSPEC_PURE")
    from . import _ckernels as c
except ImportError:
    c = None

BACKEND = "compiled" if c is not None else "python"
C_MAXN = c.MAXN if c is not None else 0


def _small_unit(re, im) -> bool:
    n = len(re)
    if n > C_MAXN:
        return False
    for rr, ri in zip(re, im):
        for x, y in zip(rr, ri):
            if x * x + y * y > 1:
                return False
    return True


def charpoly(re, im) -> list[int]:
    if c is not None and _small_unit(re, im):
        return c.charpoly(re, im)
    return py.charpoly(re, im)


def rank(re, im) -> int:
    if c is not None and len(re) == (len(re[0]) if re else 0) and _small_unit(re, im):
        return c.rank(re, im)
    return py.rank(re, im)


def jacobi_sweeps(a: np.ndarray, tol: float, max_sweeps: int) -> int:
    if c is not None:
        return c.jacobi_sweeps(a, tol, max_sweeps)
    return py.jacobi_sweeps(a, tol, max_sweeps)


def census_charpolys(n: int, start: int, stop: int) -> list[tuple[int, ...]]:
    if c is not None and n <= C_MAXN:
        return c.census_charpolys(n, start, stop)
    return py.census_charpolys(n, start, stop)


def census_ranks(n: int, start: int, stop: int) -> list[int]:
    if c is not None and n <= C_MAXN:
        return c.census_ranks(n, start, stop)
    return py.census_ranks(n, start, stop)
