# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: Faddeev-LeVerrier, Bareiss rank, cyclic Jacobi, census batches.

Integer kernels use 64-bit arithmetic and only accept matrices of order
<= MAXN with entries of modulus <= 1, for which no intermediate overflows.
The dispatcher in ``_kernels`` routes everything else to ``_pykernels``.
"""

from libc.math cimport sqrt, fabs

cdef enum:
    CMAXN = 10

MAXN = CMAXN


cdef inline void _decode(int n, long long code, long long* Ar, long long* Ai) noexcept nogil:
    cdef int u, v
    cdef long long state
    for u in range(n * n):
        Ar[u] = 0
        Ai[u] = 0
    for u in range(n):
        for v in range(u + 1, n):
            state = code & 3
            code >>= 2
            if state == 1:
                Ar[u * n + v] = 1
                Ar[v * n + u] = 1
            elif state == 2:
                Ai[u * n + v] = 1
                Ai[v * n + u] = -1
            elif state == 3:
                Ai[u * n + v] = -1
                Ai[v * n + u] = 1


cdef int _charpoly(int n, const long long* Ar, const long long* Ai, long long* out) noexcept nogil:
    # returns 0 on success, -1 if a coefficient is non-real, -2 if non-integral
    cdef long long Mr[CMAXN * CMAXN]
    cdef long long Mi[CMAXN * CMAXN]
    cdef long long Nr[CMAXN * CMAXN]
    cdef long long Ni[CMAXN * CMAXN]
    cdef int i, j, col, k
    cdef long long c, ar, ai, sr, si, trr, tri
    for i in range(n * n):
        Mr[i] = 0
        Mi[i] = 0
    for i in range(n + 1):
        out[i] = 0
    out[n] = 1
    for k in range(1, n + 1):
        c = out[n - k + 1]
        for i in range(n):
            for col in range(n):
                sr = 0
                si = 0
                for j in range(n):
                    ar = Ar[i * n + j]
                    ai = Ai[i * n + j]
                    if ar == 0 and ai == 0:
                        continue
                    sr += ar * Mr[j * n + col] - ai * Mi[j * n + col]
                    si += ar * Mi[j * n + col] + ai * Mr[j * n + col]
                Nr[i * n + col] = sr
                Ni[i * n + col] = si
            Nr[i * n + i] += c
        for i in range(n * n):
            Mr[i] = Nr[i]
            Mi[i] = Ni[i]
        trr = 0
        tri = 0
        for i in range(n):
            for j in range(n):
                ar = Ar[i * n + j]
                ai = Ai[i * n + j]
                trr += ar * Mr[j * n + i] - ai * Mi[j * n + i]
                tri += ar * Mi[j * n + i] + ai * Mr[j * n + i]
        if tri != 0:
            return -1
        if trr % k != 0:
            return -2
        out[n - k] = -trr // k
    return 0


cdef int _rank(int n, const long long* Ar, const long long* Ai) noexcept nogil:
    # returns the rank, or -1 on an inexact division
    cdef long long Mr[CMAXN * CMAXN]
    cdef long long Mi[CMAXN * CMAXN]
    cdef long long pr = 1, pi = 0, ar, ai, br, bi, xr, xi, yr, yi, nr, ni, norm, qr, qi, tmp
    cdef int r = 0, col, i, j, piv
    for i in range(n * n):
        Mr[i] = Ar[i]
        Mi[i] = Ai[i]
    for col in range(n):
        if r == n:
            break
        piv = -1
        for i in range(r, n):
            if Mr[i * n + col] != 0 or Mi[i * n + col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = Mr[r * n + j]; Mr[r * n + j] = Mr[piv * n + j]; Mr[piv * n + j] = tmp
                tmp = Mi[r * n + j]; Mi[r * n + j] = Mi[piv * n + j]; Mi[piv * n + j] = tmp
        ar = Mr[r * n + col]
        ai = Mi[r * n + col]
        norm = pr * pr + pi * pi
        for i in range(r + 1, n):
            br = Mr[i * n + col]
            bi = Mi[i * n + col]
            for j in range(col + 1, n):
                xr = Mr[i * n + j]
                xi = Mi[i * n + j]
                yr = Mr[r * n + j]
                yi = Mi[r * n + j]
                nr = ar * xr - ai * xi - (br * yr - bi * yi)
                ni = ar * xi + ai * xr - (br * yi + bi * yr)
                # divide by the previous pivot: multiply by its conjugate, divide by its norm
                qr = nr * pr + ni * pi
                qi = ni * pr - nr * pi
                if qr % norm != 0 or qi % norm != 0:
                    return -1
                Mr[i * n + j] = qr // norm
                Mi[i * n + j] = qi // norm
            Mr[i * n + col] = 0
            Mi[i * n + col] = 0
        pr = ar
        pi = ai
        r += 1
    return r


cdef int _load(list re, list im, long long* Ar, long long* Ai) except -1:
    cdef int n = len(re)
    cdef int i, j
    if n > CMAXN:
        raise ValueError(f"compiled kernels handle n <= {CMAXN}")
    for i in range(n):
        rrow = re[i]
        irow = im[i]
        for j in range(n):
            Ar[i * n + j] = rrow[j]
            Ai[i * n + j] = irow[j]
            if Ar[i * n + j] * Ar[i * n + j] + Ai[i * n + j] * Ai[i * n + j] > 1:
                raise ValueError("compiled kernels require entries of modulus <= 1")
    return n


def charpoly(list re, list im):
    cdef long long Ar[CMAXN * CMAXN]
    cdef long long Ai[CMAXN * CMAXN]
    cdef long long out[CMAXN + 1]
    cdef int n = _load(re, im, Ar, Ai)
    cdef int status = _charpoly(n, Ar, Ai, out)
    if status == -1:
        raise ArithmeticError("characteristic polynomial has a non-real coefficient")
    if status == -2:
        raise ArithmeticError("characteristic polynomial has a non-integer coefficient")
    return [out[i] for i in range(n + 1)]


def rank(list re, list im):
    cdef long long Ar[CMAXN * CMAXN]
    cdef long long Ai[CMAXN * CMAXN]
    cdef int n = _load(re, im, Ar, Ai)
    cdef int r = _rank(n, Ar, Ai)
    if r < 0:
        raise ArithmeticError("inexact Gaussian-integer division")
    return r


def jacobi_sweeps(double[:, ::1] a, double tol, int max_sweeps):
    """Cyclic Jacobi on a real symmetric array, in place; returns sweep count."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef double off, apq, theta, t, c, s, akp, akq
    cdef int sweep
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(m):
            for q in range(m):
                if p != q:
                    off += a[p, q] * a[p, q]
        if sqrt(off) < tol:
            return sweep
        if sweep == max_sweeps:
            break
        with nogil:
            for p in range(m - 1):
                for q in range(p + 1, m):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(m):
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[k, q] = s * akp + c * akq
                    for k in range(m):
                        akp = a[p, k]
                        akq = a[q, k]
                        a[p, k] = c * akp - s * akq
                        a[q, k] = s * akp + c * akq
    raise ArithmeticError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def census_charpolys(int n, long long start, long long stop):
    cdef long long Ar[CMAXN * CMAXN]
    cdef long long Ai[CMAXN * CMAXN]
    cdef long long out[CMAXN + 1]
    cdef long long code
    cdef int i, status
    if n > CMAXN:
        raise ValueError(f"compiled kernels handle n <= {CMAXN}")
    result = []
    for code in range(start, stop):
        _decode(n, code, Ar, Ai)
        status = _charpoly(n, Ar, Ai, out)
        if status != 0:
            raise ArithmeticError(f"characteristic polynomial failed for code {code}")
        result.append(tuple([out[i] for i in range(n + 1)]))
    return result


def census_ranks(int n, long long start, long long stop):
    cdef long long Ar[CMAXN * CMAXN]
    cdef long long Ai[CMAXN * CMAXN]
    cdef long long code
    cdef int r
    if n > CMAXN:
        raise ValueError(f"compiled kernels handle n <= {CMAXN}")
    result = []
    for code in range(start, stop):
        _decode(n, code, Ar, Ai)
        r = _rank(n, Ar, Ai)
        if r < 0:
            raise ArithmeticError(f"inexact division for code {code}")
        result.append(r)
    return result
