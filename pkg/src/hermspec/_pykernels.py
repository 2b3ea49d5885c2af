"""Pure-Python kernels.  Same contract as the compiled ``_ckernels`` module.

Matrices are passed as two nested lists ``re``, ``im`` of Python ints
(Gaussian-integer entries).  Arbitrary precision, no size limit.
"""

from __future__ import annotations

import math

import numpy as np

# Graph encoding: pair (u, v), u < v, in lexicographic order, two bits each.
# 0 absent, 1 undirected, 2 arc u->v, 3 arc v->u.
STATE_ENTRY = ((0, 0), (1, 0), (0, 1), (0, -1))


def pair_index(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def decode_matrix(n: int, code: int) -> tuple[list[list[int]], list[list[int]]]:
    re = [[0] * n for _ in range(n)]
    im = [[0] * n for _ in range(n)]
    for u, v in pair_index(n):
        state = code & 3
        code >>= 2
        if state:
            r, i = STATE_ENTRY[state]
            re[u][v] = r
            im[u][v] = i
            re[v][u] = r
            im[v][u] = -i
    return re, im


def _gauss_exact_div(xr: int, xi: int, dr: int, di: int) -> tuple[int, int]:
    norm = dr * dr + di * di
    nr = xr * dr + xi * di
    ni = xi * dr - xr * di
    qr, rr = divmod(nr, norm)
    qi, ri = divmod(ni, norm)
    if rr or ri:
        raise ArithmeticError("inexact Gaussian-integer division")
    return qr, qi


def charpoly(re, im) -> list[int]:
    """Coefficients ``c_0..c_n`` of det(tI - A) by Faddeev-LeVerrier.

    Raises ArithmeticError if a coefficient is not a rational integer, which
    cannot happen for a Hermitian Gaussian-integer matrix.
    """
    n = len(re)
    rows = [[(j, re[i][j], im[i][j]) for j in range(n) if re[i][j] or im[i][j]] for i in range(n)]
    Mr = [[0] * n for _ in range(n)]
    Mi = [[0] * n for _ in range(n)]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        c = coeffs[n - k + 1]
        newr = []
        newi = []
        for i in range(n):
            rr = [0] * n
            ri = [0] * n
            for j, ar, ai in rows[i]:
                Mrj = Mr[j]
                Mij = Mi[j]
                for col in range(n):
                    br = Mrj[col]
                    bi = Mij[col]
                    if br or bi:
                        rr[col] += ar * br - ai * bi
                        ri[col] += ar * bi + ai * br
            rr[i] += c
            newr.append(rr)
            newi.append(ri)
        Mr, Mi = newr, newi
        tr_r = 0
        tr_i = 0
        for i in range(n):
            for j, ar, ai in rows[i]:
                br = Mr[j][i]
                bi = Mi[j][i]
                tr_r += ar * br - ai * bi
                tr_i += ar * bi + ai * br
        if tr_i:
            raise ArithmeticError("characteristic polynomial has a non-real coefficient")
        q, rem = divmod(-tr_r, k)
        if rem:
            raise ArithmeticError("characteristic polynomial has a non-integer coefficient")
        coeffs[n - k] = q
    return coeffs


def rank(re, im) -> int:
    """Exact rank by Bareiss fraction-free elimination over Z[i]."""
    nrows = len(re)
    if nrows == 0:
        return 0
    ncols = len(re[0])
    Mr = [list(row) for row in re]
    Mi = [list(row) for row in im]
    pr_, pi_ = 1, 0
    r = 0
    for col in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if Mr[i][col] or Mi[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            Mr[r], Mr[piv] = Mr[piv], Mr[r]
            Mi[r], Mi[piv] = Mi[piv], Mi[r]
        ar, ai = Mr[r][col], Mi[r][col]
        rowr, rowi = Mr[r], Mi[r]
        for i in range(r + 1, nrows):
            br, bi = Mr[i][col], Mi[i][col]
            xr_row, xi_row = Mr[i], Mi[i]
            for j in range(col + 1, ncols):
                xr, xi = xr_row[j], xi_row[j]
                yr, yi = rowr[j], rowi[j]
                # pivot * x - b * y
                nr = ar * xr - ai * xi - (br * yr - bi * yi)
                ni = ar * xi + ai * xr - (br * yi + bi * yr)
                if nr or ni:
                    nr, ni = _gauss_exact_div(nr, ni, pr_, pi_)
                xr_row[j], xi_row[j] = nr, ni
            xr_row[col] = 0
            xi_row[col] = 0
        pr_, pi_ = ar, ai
        r += 1
        if r == nrows:
            break
    return r


def jacobi_sweeps(a: np.ndarray, tol: float, max_sweeps: int) -> int:
    """Cyclic Jacobi on a real symmetric array, in place.

    Stops when the off-diagonal Frobenius norm drops below ``tol``.  Returns
    the number of sweeps performed.
    """
    m = a.shape[0]
    for sweep in range(max_sweeps + 1):
        # sum the off-diagonal squares directly; |A|^2 - |diag|^2 cancels catastrophically
        off = math.sqrt(float(np.sum(np.square(a - np.diag(np.diag(a))))))
        if off < tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                with np.errstate(over="ignore"):
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:  # theta^2 would overflow
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
    raise ArithmeticError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def census_charpolys(n: int, start: int, stop: int) -> list[tuple[int, ...]]:
    return [tuple(charpoly(*decode_matrix(n, code))) for code in range(start, stop)]


def census_ranks(n: int, start: int, stop: int) -> list[int]:
    return [rank(*decode_matrix(n, code)) for code in range(start, stop)]
