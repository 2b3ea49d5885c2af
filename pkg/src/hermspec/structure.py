"""Structural characterizations: phase certificates, twins, rank-2 classification."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Literal

from .graph import (
    MixedGraph,
    c3,
    complete_bipartite,
    components,
    directed_cycle,
    disjoint_union_isolated,
    induced_subgraph,
)
from .spectral import CharPoly, GaussianInt, HermitianMatrix, char_poly, graph_parts, graph_rank, rank_exact
from .switching import GaugePartition, Phase, are_switching_equivalent, transform_entrywise

__all__ = [
    "CertificateKind",
    "PhaseCertificate",
    "cospectral_partition",
    "antispectral_partition",
    "find_twins",
    "twin_reduction",
    "Rank2Form",
    "NotRank2",
    "classify_rank2",
    "Rank2ClassificationError",
    "complete_multipartite_parts",
    "special_matrix",
    "special_matrix_charpoly",
    "special_matrix_closed_form",
]


class CertificateKind(enum.Enum):
    COSPECTRAL = "cospectral"
    ANTISPECTRAL = "antispectral"


# Phase step across an edge u -> w: undirected edge, arc u->w, arc w->u.
_STEPS = {
    CertificateKind.COSPECTRAL: (0, 3, 1),  # copy; times -i; times i
    CertificateKind.ANTISPECTRAL: (2, 1, 3),  # negate; times i; times -i
}


@dataclass(frozen=True)
class PhaseCertificate:
    kind: CertificateKind
    partition: GaugePartition

    def verify(self, D: MixedGraph) -> bool:
        """Check the edge rules of the certificate's kind.

        Cospectral: parts induce undirected graphs; arcs go V_j -> V_{-ij}.
        Antispectral: parts are independent; undirected edges join V_j and
        V_{-j}; arcs go V_j -> V_{ij}.
        """
        s = self.partition.phases
        und_step, arc_step, _ = _STEPS[self.kind]
        ok_und = all((s[v] - s[u]) % 4 == und_step for u, v in D.undirected)
        ok_arc = all((s[v] - s[u]) % 4 == arc_step for u, v in D.arcs)
        return ok_und and ok_arc

    def switched(self, D: MixedGraph) -> HermitianMatrix:
        """``S^{-1} H(D) S``: equals H(G(D)), or -H(G(D)) for antispectral."""
        return transform_entrywise(D, self.partition)


def _propagate(D: MixedGraph, kind: CertificateKind) -> PhaseCertificate | None:
    und_step, fwd, bwd = _STEPS[kind]
    s: list[int | None] = [None] * D.n
    for comp in components(D):
        s[comp[0]] = 0
        queue = deque([comp[0]])
        while queue:
            u = queue.popleft()
            for w in D.neighbors[u]:
                if s[w] is not None:
                    continue
                if (min(u, w), max(u, w)) in D.undirected:
                    step = und_step
                elif (u, w) in D.arcs:
                    step = fwd
                else:
                    step = bwd
                s[w] = (s[u] + step) % 4
                queue.append(w)
    cert = PhaseCertificate(kind, GaugePartition(tuple(Phase(x) for x in s)))
    return cert if cert.verify(D) else None


def cospectral_partition(D: MixedGraph) -> PhaseCertificate | None:
    """Partition certifying that D is cospectral with its underlying graph, if any."""
    return _propagate(D, CertificateKind.COSPECTRAL)


def antispectral_partition(D: MixedGraph) -> PhaseCertificate | None:
    """Partition certifying that D is antispectral to its underlying graph, if any."""
    return _propagate(D, CertificateKind.ANTISPECTRAL)


# ---------------------------------------------------------------------------
# Twins


def _row_scalar(ru, rv) -> int | None:
    """Exponent k with ru = i**k * rv entrywise, if any (first match)."""
    for k in range(4):
        ph = Phase(k).gaussian
        if all(a == ph * b for a, b in zip(ru, rv)):
            return k
    return None


def _twin_scalars(D: MixedGraph) -> tuple[list[list[int]], list[int | None]]:
    re, im = graph_parts(D)
    rows = [[GaussianInt(r, i) for r, i in zip(rr, ri)] for rr, ri in zip(re, im)]
    classes: list[list[int]] = []
    for v in range(D.n):
        for cls in classes:
            rep = cls[0]
            if rows[rep][v] or rows[v][rep]:
                continue
            if _row_scalar(rows[v], rows[rep]) is not None:
                cls.append(v)
                break
        else:
            classes.append([v])
    scalars = [None] * D.n
    for cls in classes:
        rep = cls[0]
        for v in cls:
            scalars[v] = _row_scalar(rows[v], rows[rep])
    return classes, scalars


def find_twins(D: MixedGraph) -> list[list[int]]:
    """Twin classes: u, v are twins when H_uv = 0 and row_u = c * row_v, c in {±1, ±i}.

    Classes are sorted and ordered by their smallest vertex.
    """
    return _twin_scalars(D)[0]


def twin_reduction(D: MixedGraph) -> tuple[MixedGraph, list[int]]:
    """Quotient by twin classes and the class sizes.

    Each class is represented by its smallest vertex; twins differ from it by
    a row scalar, so the induced subgraph on representatives is the quotient.
    """
    classes = find_twins(D)
    reps = [cls[0] for cls in classes]
    return induced_subgraph(D, reps), [len(cls) for cls in classes]


# ---------------------------------------------------------------------------
# Rank 2


@dataclass(frozen=True, order=True)
class Rank2Form:
    """``K_{a,b} ∪ tK_1`` (form "K") or ``C3(a,b,c) ∪ tK_1`` (form "C3")."""

    form: Literal["K", "C3"]
    parts: tuple[int, ...]
    t: int = 0

    def __post_init__(self) -> None:
        parts = tuple(sorted(int(p) for p in self.parts))
        expected = 2 if self.form == "K" else 3 if self.form == "C3" else None
        if expected is None:
            raise ValueError(f"form must be 'K' or 'C3', got {self.form!r}")
        if len(parts) != expected or parts[0] < 1:
            raise ValueError(f"{self.form} needs {expected} positive part sizes, got {self.parts}")
        if self.t < 0:
            raise ValueError("t must be >= 0")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def bipartite(cls, a: int, b: int, t: int = 0) -> "Rank2Form":
        return cls("K", (a, b), t)

    @classmethod
    def tripartite(cls, a: int, b: int, c: int, t: int = 0) -> "Rank2Form":
        return cls("C3", (a, b, c), t)

    @property
    def n(self) -> int:
        return sum(self.parts) + self.t

    @property
    def edges(self) -> int:
        p = self.parts
        if self.form == "K":
            return p[0] * p[1]
        return p[0] * p[1] + p[0] * p[2] + p[1] * p[2]

    @property
    def rho2(self) -> int:
        """Square of the positive eigenvalue; equals the edge count."""
        return self.edges

    def realize(self) -> MixedGraph:
        base = complete_bipartite(*self.parts) if self.form == "K" else c3(*self.parts)
        return disjoint_union_isolated(base, self.t)

    def charpoly(self) -> CharPoly:
        """``t^(n-2) (t^2 - rho^2)``."""
        coeffs = [0] * (self.n + 1)
        coeffs[self.n] = 1
        coeffs[self.n - 2] = -self.rho2
        return CharPoly(tuple(coeffs))

    def label(self, descending: bool = False) -> str:
        p = sorted(self.parts, reverse=descending)
        if self.form == "K":
            body = f"K_{{{p[0]},{p[1]}}}"
        else:
            body = f"C3({','.join(map(str, p))})"
        return body + (f"+{self.t}K1" if self.t else "")

    def to_json(self) -> dict:
        out: dict = {"rank": 2, "form": self.form}
        out.update(zip("abc", self.parts))
        out.update({"t": self.t, "n": self.n, "edges": self.edges, "rho2": self.rho2})
        return out

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class NotRank2:
    rank: int

    def to_json(self) -> dict:
        return {"rank": self.rank}

    def __bool__(self) -> bool:
        return False


class Rank2ClassificationError(RuntimeError):
    """A rank-2 graph that fits neither normal form."""


def complete_multipartite_parts(D: MixedGraph, vertices: list[int]) -> list[list[int]] | None:
    """Parts of G(D)[vertices] when it is complete multipartite, else None.

    Complete multipartite means non-adjacency is an equivalence relation.
    """
    parts: list[list[int]] = []
    for v in vertices:
        nb = set(D.neighbors[v])
        for part in parts:
            if part[0] not in nb:
                part.append(v)
                break
        else:
            parts.append([v])
    members = set(vertices)
    for part in parts:
        pset = set(part)
        for v in part:
            nb = set(D.neighbors[v]) & members
            if nb & pset or nb != members - pset:
                return None
    return parts


_TRIANGLE = directed_cycle(3)


def classify_rank2(D: MixedGraph) -> Rank2Form | NotRank2:
    """Normal form of a rank-2 mixed graph, or ``NotRank2(rank)``."""
    r = graph_rank(D)
    if r != 2:
        return NotRank2(r)
    comps = [c for c in components(D) if len(c) > 1]
    if len(comps) != 1:
        raise Rank2ClassificationError(f"rank 2 with {len(comps)} nontrivial components: {D!r}")
    comp = comps[0]
    t = D.n - len(comp)
    core = induced_subgraph(D, comp)
    parts = complete_multipartite_parts(core, list(range(core.n)))
    if parts is None or len(parts) not in (2, 3):
        raise Rank2ClassificationError(f"rank 2 but underlying graph is not complete bi/tripartite: {D!r}")
    quotient, sizes = twin_reduction(core)
    if sorted(sizes) != sorted(len(p) for p in parts):
        raise Rank2ClassificationError(f"twin classes differ from the parts: {D!r}")
    if len(parts) == 2:
        if quotient.n != 2 or quotient.num_edges != 1:
            raise Rank2ClassificationError(f"bipartite twin quotient is not a single edge: {D!r}")
        return Rank2Form("K", tuple(sizes), t)
    if graph_rank(quotient) != 2 or are_switching_equivalent(quotient, _TRIANGLE, up_to_iso=True) is None:
        raise Rank2ClassificationError(f"tripartite twin quotient is not an odd triangle: {D!r}")
    return Rank2Form("C3", tuple(sizes), t)


# ---------------------------------------------------------------------------
# The 4x4 test matrix with a vertex joined by undirected edges to three others


_SPECIAL_VALUES = {"0": GaussianInt(0, 0), "i": GaussianInt(0, 1), "-i": GaussianInt(0, -1)}


def _special_arg(x) -> GaussianInt:
    if isinstance(x, GaussianInt):
        g = x
    elif isinstance(x, str):
        if x not in _SPECIAL_VALUES:
            raise ValueError(f"argument must be 0, i or -i, got {x!r}")
        g = _SPECIAL_VALUES[x]
    else:
        c = complex(x)
        g = GaussianInt(int(c.real), int(c.imag))
        if complex(g) != c:
            raise ValueError(f"argument must be 0, i or -i, got {x!r}")
    if g not in _SPECIAL_VALUES.values():
        raise ValueError(f"argument must be 0, i or -i, got {x!r}")
    return g


def special_matrix(x, y, z) -> HermitianMatrix:
    """``[[0,1,1,1],[1,0,x,-y],[1,-x,0,z],[1,y,-z,0]]`` for x, y, z in {0, ±i}."""
    x, y, z = (_special_arg(v) for v in (x, y, z))
    o, one = GaussianInt(0, 0), GaussianInt(1, 0)
    return HermitianMatrix(
        (
            (o, one, one, one),
            (one, o, x, -y),
            (one, -x, o, z),
            (one, y, -z, o),
        )
    )


def special_matrix_charpoly(x, y, z) -> CharPoly:
    return char_poly(special_matrix(x, y, z))


def special_matrix_closed_form(x, y, z) -> CharPoly:
    """``t^4 + (x^2+y^2+z^2-3) t^2 - (x+y+z)^2`` evaluated exactly."""
    x, y, z = (_special_arg(v) for v in (x, y, z))
    sq = x * x + y * y + z * z - GaussianInt(3, 0)
    s = x + y + z
    const = -(s * s)
    assert sq.im == 0 and const.im == 0
    return CharPoly((const.re, 0, sq.re, 0, 1))


def special_matrix_rank(x, y, z) -> int:
    return rank_exact(special_matrix(x, y, z))
