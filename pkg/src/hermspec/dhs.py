"""Cospectral mates of rank-2 mixed graphs and number-theoretic DHS deciders.

Two rank-2 mixed graphs on the same number of vertices are cospectral exactly
when they have the same number of edges, so everything here reduces to
integer enumeration.  No floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .structure import Rank2Form

__all__ = [
    "MateSet",
    "EisensteinSolution",
    "mates_rank2",
    "mates_by_factoring",
    "is_dhs_rank2",
    "knn_row",
    "table_knn",
    "TableRow",
    "prop510_mate",
    "eisenstein_solutions",
    "prime_factors",
    "cor513_is_dhs",
    "cor513_deciders",
    "cor513_mate",
    "CorollaryDisagreement",
    "prop59_witnesses",
    "form_sort_key",
]


def form_sort_key(f: Rank2Form) -> tuple:
    """Bipartite forms first, then by part sizes and isolated count."""
    return (0 if f.form == "K" else 1, f.parts, f.t)


@dataclass(frozen=True)
class MateSet:
    edges: int
    vertices: int
    mates: tuple[Rank2Form, ...]

    def __iter__(self):
        return iter(self.mates)

    def __len__(self) -> int:
        return len(self.mates)

    def __contains__(self, form: object) -> bool:
        return form in self.mates

    def to_json(self) -> dict:
        return {"edges": self.edges, "vertices": self.vertices, "mates": [m.to_json() for m in self.mates]}


@dataclass(frozen=True)
class EisensteinSolution:
    """``a^2 = p^2 + q^2 + p*q`` with ``1 <= p <= q``."""

    a: int
    p: int
    q: int


def mates_rank2(e: int, n: int) -> MateSet:
    """Every rank-2 normal form with ``e`` edges on ``n`` vertices."""
    if e < 1 or n < 2:
        raise ValueError(f"need e >= 1 and n >= 2, got e={e}, n={n}")
    mates = []
    for a in range(1, isqrt(e) + 1):
        if e % a == 0:
            b = e // a
            if a + b <= n:
                mates.append(Rank2Form("K", (a, b), n - a - b))
    a = 1
    while 3 * a * a <= e:
        b = a
        # c >= b forces ab + (a+b)b <= e
        while a * b + (a + b) * b <= e:
            c, rem = divmod(e - a * b, a + b)
            if rem == 0 and c >= b and a + b + c <= n:
                mates.append(Rank2Form("C3", (a, b, c), n - a - b - c))
            b += 1
        a += 1
    return MateSet(e, n, tuple(sorted(mates, key=form_sort_key)))


def mates_by_factoring(e: int, n: int) -> MateSet:
    """Same set as :func:`mates_rank2`, found via ``(x+c)(y+c) = e + c^2``.

    For the smallest part ``c``, factor ``e + c^2 = X*Y`` with ``X >= Y >= 2c``
    and keep the factorizations with ``X + Y <= n + c``.
    """
    mates = []
    for a in range(1, isqrt(e) + 1):
        if e % a == 0 and a + e // a <= n:
            mates.append(Rank2Form("K", (a, e // a), n - a - e // a))
    c = 1
    while 3 * c * c <= e:
        target = e + c * c
        for Y in range(2 * c, isqrt(target) + 1):
            if target % Y:
                continue
            X = target // Y
            if X + Y <= n + c:
                mates.append(Rank2Form("C3", (X - c, Y - c, c), n - (X + Y - c)))
        c += 1
    return MateSet(e, n, tuple(sorted(set(mates), key=form_sort_key)))


def is_dhs_rank2(form: Rank2Form) -> tuple[bool, MateSet]:
    """DHS iff the form is its own only cospectral normal form."""
    ms = mates_rank2(form.edges, form.n)
    if form not in ms:
        raise AssertionError(f"{form} missing from its own mate set")
    return len(ms) == 1, ms


# ---------------------------------------------------------------------------
# K_{n,n} table


@dataclass(frozen=True)
class TableRow:
    n: int
    dhs: bool
    mates: tuple[Rank2Form, ...]  # excluding K_{n,n} itself

    def to_json(self) -> dict:
        return {
            "graph": f"K_{{{self.n},{self.n}}}",
            "n": self.n,
            "dhs": self.dhs,
            "mates": [m.to_json() for m in self.mates],
        }


def knn_row(n: int) -> TableRow:
    knn = Rank2Form("K", (n, n), 0)
    dhs, ms = is_dhs_rank2(knn)
    others = tuple(sorted((m for m in ms if m != knn), key=lambda f: sorted(f.parts, reverse=True)))
    return TableRow(n, dhs, others)


def table_knn(n_max: int) -> list[TableRow]:
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    return [knn_row(n) for n in range(2, n_max + 1)]


# ---------------------------------------------------------------------------
# Explicit families


def prop510_mate(m: int, p: int, a: int, b: int, n: int) -> Rank2Form:
    """Mate ``C3(n-t, am/p, bm/p) ∪ tK_1`` of ``K_{m,n}`` with ``t = abm/p^2``."""
    if min(m, p, a, b, n) < 1:
        raise ValueError("all parameters must be positive integers")
    if m % (p * p):
        raise ValueError(f"p^2 = {p * p} does not divide m = {m}")
    if a + b != p:
        raise ValueError(f"a + b = {a + b} must equal p = {p}")
    t = a * b * m // (p * p)
    if n <= t:
        raise ValueError(f"need n > abm/p^2 = {t}, got n = {n}")
    form = Rank2Form("C3", (n - t, a * m // p, b * m // p), t)
    if form.edges != m * n or form.n != m + n:
        raise AssertionError(f"{form} does not have {m * n} edges on {m + n} vertices")
    return form


def eisenstein_solutions(a: int) -> list[EisensteinSolution]:
    """All ``1 <= p <= q < a`` with ``a^2 = p^2 + q^2 + pq``."""
    if a < 1:
        raise ValueError("a must be positive")
    out = []
    a2 = a * a
    for p in range(1, a):
        # q = (-p + sqrt(4a^2 - 3p^2)) / 2
        disc = 4 * a2 - 3 * p * p
        r = isqrt(disc)
        if r * r != disc or (r - p) % 2:
            continue
        q = (r - p) // 2
        if q < p:
            break
        if q < a:
            out.append(EisensteinSolution(a, p, q))
    return out


def prime_factors(k: int) -> list[int]:
    """Distinct primes dividing ``k``, by trial division."""
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1 if d == 2 else 2
    if k > 1:
        out.append(k)
    return out


class CorollaryDisagreement(AssertionError):
    pass


def _check_cor513(n: int, a: int) -> None:
    if not (0 < a < n):
        raise ValueError(f"need 0 < a < n, got a={a}, n={n}")
    if a * a >= 2 * n:
        raise ValueError(f"need a^2 < 2n, got a^2={a * a}, 2n={2 * n}")


def cor513_deciders(a: int) -> tuple[bool, bool]:
    """(no Eisenstein triple for a, no prime factor of a that is 1 mod 6)."""
    by_equation = not eisenstein_solutions(a)
    by_primes = not any(p % 6 == 1 for p in prime_factors(a))
    return by_equation, by_primes


def cor513_is_dhs(n: int, a: int) -> bool:
    """Whether ``C3(n-a, n, n+a)`` is DHS; both deciders must agree."""
    _check_cor513(n, a)
    by_equation, by_primes = cor513_deciders(a)
    if by_equation != by_primes:
        raise CorollaryDisagreement(f"deciders disagree for a={a}: equation {by_equation}, primes {by_primes}")
    return by_equation


def cor513_mate(n: int, a: int) -> Rank2Form | None:
    """A mate ``C3(n-p-q, n+p, n+q)`` from the first Eisenstein triple, if any."""
    _check_cor513(n, a)
    sols = eisenstein_solutions(a)
    if not sols:
        return None
    s = sols[0]
    return Rank2Form("C3", (n - s.p - s.q, n + s.p, n + s.q), 0)


def prop59_witnesses(limit: int) -> dict[int, Rank2Form]:
    """Every ``2 <= n <= limit`` with ``K_{n,n}`` not DHS, with one mate each."""
    out = {}
    for n in range(2, limit + 1):
        row = knn_row(n)
        if not row.dhs:
            out[n] = row.mates[0]
    return out
