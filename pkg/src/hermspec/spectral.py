"""Exact and floating-point spectra of Hermitian adjacency matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .graph import MixedGraph, components, induced_subgraph

__all__ = [
    "EIG_TOL",
    "JACOBI_TOL",
    "GaussianInt",
    "HermitianMatrix",
    "CharPoly",
    "Spectrum",
    "hermitian_matrix",
    "char_poly",
    "graph_char_poly",
    "eigenvalues",
    "rank_exact",
    "graph_rank",
    "are_cospectral",
    "are_antispectral",
    "lambda1",
    "spectrum_json",
]

# Eigenvalue comparisons and the Jacobi stopping rule.
EIG_TOL = 1e-8
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True, slots=True)
class GaussianInt:
    re: int = 0
    im: int = 0

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def exact_div(self, other: "GaussianInt") -> "GaussianInt":
        """Quotient when ``other`` divides ``self`` in Z[i]; ArithmeticError otherwise."""
        d = other.norm()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        num = self * other.conjugate()
        if num.re % d or num.im % d:
            raise ArithmeticError(f"{other} does not divide {self}")
        return GaussianInt(num.re // d, num.im // d)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        return f"{self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i"


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
_ADJ_VALUES = {ZERO, ONE, I, -I}


@dataclass(frozen=True)
class HermitianMatrix:
    """Square matrix over Z[i] that is Hermitian (checked on construction)."""

    entries: tuple[tuple[GaussianInt, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(e if isinstance(e, GaussianInt) else _to_gauss(e) for e in row) for row in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        for u in range(n):
            for v in range(u, n):
                if rows[u][v] != rows[v][u].conjugate():
                    raise ValueError(f"matrix is not Hermitian at ({u}, {v})")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, uv: tuple[int, int]) -> GaussianInt:
        u, v = uv
        return self.entries[u][v]

    @property
    def adjacency_valid(self) -> bool:
        """All entries in {0, 1, i, -i} and a zero diagonal."""
        return all(e in _ADJ_VALUES for row in self.entries for e in row) and not any(
            self.entries[v][v] for v in range(self.n)
        )

    def parts(self) -> tuple[list[list[int]], list[list[int]]]:
        return (
            [[e.re for e in row] for row in self.entries],
            [[e.im for e in row] for row in self.entries],
        )

    def to_numpy(self) -> np.ndarray:
        re, im = self.parts()
        return np.array(re, dtype=float) + 1j * np.array(im, dtype=float)

    @classmethod
    def from_parts(cls, re: Sequence[Sequence[int]], im: Sequence[Sequence[int]]) -> "HermitianMatrix":
        return cls(tuple(tuple(GaussianInt(r, i) for r, i in zip(rr, ri)) for rr, ri in zip(re, im)))


def _to_gauss(x) -> GaussianInt:
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise ValueError(f"{x} is not a Gaussian integer")
        return GaussianInt(int(x.real), int(x.imag))
    if isinstance(x, int):
        return GaussianInt(x, 0)
    raise TypeError(f"cannot convert {x!r} to GaussianInt")


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial; ``coeffs[k]`` multiplies ``t**k``."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def zero_multiplicity(self) -> int:
        k = 0
        while k < self.degree and self.coeffs[k] == 0:
            k += 1
        return k

    def reflected(self) -> "CharPoly":
        """``(-1)^n p(-t)``: the polynomial of the negated spectrum."""
        n = self.degree
        return CharPoly(tuple(c if (n - k) % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k == 0:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(self.eigenvalues)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def __getitem__(self, j: int) -> float:
        return self.eigenvalues[j]


def hermitian_matrix(D: MixedGraph) -> HermitianMatrix:
    re, im = graph_parts(D)
    return HermitianMatrix.from_parts(re, im)


def graph_parts(D: MixedGraph) -> tuple[list[list[int]], list[list[int]]]:
    """Real and imaginary parts of H(D) as nested int lists."""
    n = D.n
    re = [[0] * n for _ in range(n)]
    im = [[0] * n for _ in range(n)]
    for u, v in D.undirected:
        re[u][v] = re[v][u] = 1
    for u, v in D.arcs:
        im[u][v] = 1
        im[v][u] = -1
    return re, im


def char_poly(H: HermitianMatrix) -> CharPoly:
    """Exact det(tI - H)."""
    return CharPoly(tuple(_kernels.charpoly(*H.parts())))


def graph_char_poly(D: MixedGraph) -> CharPoly:
    return CharPoly(tuple(_kernels.charpoly(*graph_parts(D))))


def _real_embedding(H: HermitianMatrix) -> np.ndarray:
    re, im = H.parts()
    A = np.array(re, dtype=float)
    B = np.array(im, dtype=float)
    return np.ascontiguousarray(np.block([[A, -B], [B, A]]))


def eigenvalues(H: HermitianMatrix) -> Spectrum:
    """All eigenvalues, descending, by cyclic Jacobi on the real embedding.

    ``[[Re H, -Im H], [Im H, Re H]]`` has every eigenvalue of ``H`` twice; the
    sorted doubled list is paired off and each pair averaged.
    """
    n = H.n
    if n == 0:
        return Spectrum(())
    a = _real_embedding(H)
    _kernels.jacobi_sweeps(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    doubled = np.sort(np.diag(a))[::-1]
    vals = 0.5 * (doubled[0::2] + doubled[1::2])
    return Spectrum(tuple(float(x) for x in vals))


def rank_exact(H: HermitianMatrix) -> int:
    return _kernels.rank(*H.parts())


def graph_rank(D: MixedGraph) -> int:
    return _kernels.rank(*graph_parts(D))


def are_cospectral(D1: MixedGraph, D2: MixedGraph) -> bool:
    if D1.n != D2.n:
        return False
    return graph_char_poly(D1) == graph_char_poly(D2)


def are_antispectral(D1: MixedGraph, D2: MixedGraph) -> bool:
    if D1.n != D2.n:
        return False
    return graph_char_poly(D2) == graph_char_poly(D1).reflected()


def lambda1(D: MixedGraph) -> float:
    if D.n == 0:
        raise ValueError("empty graph has no eigenvalues")
    return eigenvalues(hermitian_matrix(D))[0]


def component_extremes(D: MixedGraph) -> list[tuple[list[int], float, float]]:
    """Per weakly connected component: (vertices, largest, smallest eigenvalue)."""
    out = []
    for comp in components(D):
        spec = eigenvalues(hermitian_matrix(induced_subgraph(D, comp)))
        out.append((comp, spec[0], spec[-1]))
    return out


_SAFE_INT = 2**53


def _json_int(x: int):
    return str(x) if abs(x) >= _SAFE_INT else x


def _json_float(x: float) -> float:
    x = round(x, 12)
    return 0.0 if x == 0 else x


def spectrum_json(D: MixedGraph, with_eigenvalues: bool = True) -> dict:
    """``{"n", "charpoly": [c0, ..., 1], "eigenvalues": [...]}``."""
    H = hermitian_matrix(D)
    out: dict = {"n": D.n, "charpoly": [_json_int(c) for c in char_poly(H).coeffs]}
    if with_eigenvalues:
        out["eigenvalues"] = [_json_float(x) for x in eigenvalues(H)]
    return out


def charpoly_from_json(values: Sequence) -> CharPoly:
    return CharPoly(tuple(int(v) for v in values))
