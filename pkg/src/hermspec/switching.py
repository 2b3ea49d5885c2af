"""Four-way switching: gauges, admissibility, application, equivalence.

A gauge assigns each vertex a phase in {1, i, -1, -i}; it acts on H(D) as the
diagonal similarity ``H'_{uv} = H_{uv} * S_v / S_u``.  Phases are stored as
exponents of ``i`` so the action is addition mod 4.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import (
    MixedGraph,
    components,
    converse,
    iter_isomorphisms,
    relabel,
    underlying_graph,
)
from .spectral import GaussianInt, HermitianMatrix

__all__ = [
    "Phase",
    "GaugePartition",
    "InadmissibleGaugeError",
    "SwitchingCapError",
    "MixedCutError",
    "SwitchingWitness",
    "transform_entrywise",
    "is_admissible",
    "admissibility_violations",
    "apply_four_way",
    "matrix_to_graph",
    "two_way_mixed",
    "two_way_directed",
    "admissible_gauges",
    "random_admissible_gauge",
    "gauge_between",
    "are_switching_equivalent",
    "switching_class",
    "LABELED_CAP",
    "ISO_CAP",
    "CLASS_CAP",
]

LABELED_CAP = 16
ISO_CAP = 8
CLASS_CAP = 10


class Phase(enum.IntEnum):
    """Element ``i**k`` of the group {1, i, -1, -i}; the value is ``k``."""

    ONE = 0
    I = 1
    NEG_ONE = 2
    NEG_I = 3

    def times(self, other: "Phase") -> "Phase":
        return Phase((self + other) % 4)

    def inverse(self) -> "Phase":
        return Phase(-self % 4)

    conjugate = inverse

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def gaussian(self) -> GaussianInt:
        return _GAUSS[self]

    @classmethod
    def parse(cls, text: str) -> "Phase":
        try:
            return _FROM_LABEL[text.strip().replace("+", "")]
        except KeyError:
            raise ValueError(f"gauge class must be one of 1, -1, i, -i; got {text!r}") from None


_LABELS = {Phase.ONE: "1", Phase.I: "i", Phase.NEG_ONE: "-1", Phase.NEG_I: "-i"}
_FROM_LABEL = {v: k for k, v in _LABELS.items()}
_GAUSS = {
    Phase.ONE: GaussianInt(1, 0),
    Phase.I: GaussianInt(0, 1),
    Phase.NEG_ONE: GaussianInt(-1, 0),
    Phase.NEG_I: GaussianInt(0, -1),
}


@dataclass(frozen=True)
class GaugePartition:
    """Vertex ``v`` lies in ``V_j`` with ``j = phases[v]``."""

    phases: tuple[Phase, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "phases", tuple(Phase(p) for p in self.phases))

    @classmethod
    def constant(cls, n: int, phase: Phase = Phase.ONE) -> "GaugePartition":
        return cls((phase,) * n)

    @classmethod
    def from_values(cls, values: Sequence) -> "GaugePartition":
        """Build from labels (``"1"``, ``"-i"``), ``complex`` values or exponents."""
        out = []
        for x in values:
            if isinstance(x, Phase):
                out.append(x)
            elif isinstance(x, str):
                out.append(Phase.parse(x))
            elif isinstance(x, complex) or isinstance(x, float):
                out.append({1: Phase.ONE, 1j: Phase.I, -1: Phase.NEG_ONE, -1j: Phase.NEG_I}[complex(x)])
            else:
                out.append({1: Phase.ONE, -1: Phase.NEG_ONE}[x])
        return cls(tuple(out))

    @classmethod
    def from_classes(cls, n: int, classes: Mapping) -> "GaugePartition":
        """Vertices missing from ``classes`` default to phase 1."""
        phases = [Phase.ONE] * n
        for key, verts in classes.items():
            ph = key if isinstance(key, Phase) else Phase.parse(str(key))
            for v in verts:
                if not 0 <= v < n:
                    raise ValueError(f"gauge vertex {v} out of range for n={n}")
                phases[v] = ph
        return cls(tuple(phases))

    @classmethod
    def parse(cls, n: int, tokens: Iterable[str]) -> "GaugePartition":
        """Parse ``["1:0,3", "i:1", "-1:2"]`` (class:vertex-list)."""
        classes: dict[Phase, list[int]] = {}
        seen: set[int] = set()
        for tok in tokens:
            for piece in tok.split():
                label, sep, verts = piece.partition(":")
                if not sep:
                    raise ValueError(f"gauge token {piece!r} is not of the form class:vertices")
                ph = Phase.parse(label)
                try:
                    vs = [int(x) for x in verts.split(",") if x]
                except ValueError:
                    raise ValueError(f"gauge token {piece!r}: vertices must be comma-separated integers") from None
                for v in vs:
                    if v in seen:
                        raise ValueError(f"vertex {v} assigned to two gauge classes")
                    seen.add(v)
                    classes.setdefault(ph, []).append(v)
        return cls.from_classes(n, classes)

    @property
    def n(self) -> int:
        return len(self.phases)

    def __getitem__(self, v: int) -> Phase:
        return self.phases[v]

    def __mul__(self, other: "GaugePartition") -> "GaugePartition":
        return GaugePartition(tuple(a.times(b) for a, b in zip(self.phases, other.phases, strict=True)))

    def classes(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for v, p in enumerate(self.phases):
            out.setdefault(p.label, []).append(v)
        return out

    def labels(self) -> list[str]:
        return [p.label for p in self.phases]

    def __str__(self) -> str:
        return " ".join(f"{k}:{','.join(map(str, vs))}" for k, vs in self.classes().items())


class InadmissibleGaugeError(ValueError):
    def __init__(self, edge: tuple[int, int], edge_type: tuple[str, str], undirected: bool):
        self.edge = edge
        self.edge_type = edge_type
        kind = "undirected edge" if undirected else "arc"
        super().__init__(
            f"gauge is not admissible: {kind} {edge[0]}{' -- ' if undirected else ' -> '}{edge[1]} "
            f"has type ({edge_type[0]},{edge_type[1]})"
        )


class SwitchingCapError(ValueError):
    pass


class MixedCutError(ValueError):
    pass


def _exponent(D: MixedGraph, u: int, v: int) -> int | None:
    """H(D)_{uv} as a power of i, or None when u, v are non-adjacent."""
    if (min(u, v), max(u, v)) in D.undirected:
        return 0
    if (u, v) in D.arcs:
        return 1
    if (v, u) in D.arcs:
        return 3
    return None


def transform_entrywise(D: MixedGraph, g: GaugePartition) -> HermitianMatrix:
    """``S^{-1} H(D) S``; may contain -1 entries when ``g`` is not admissible."""
    n = D.n
    if g.n != n:
        raise ValueError(f"gauge has {g.n} vertices, graph has {n}")
    zero = GaussianInt(0, 0)
    rows = [[zero] * n for _ in range(n)]
    for u in range(n):
        for v in D.neighbors[u]:
            e = _exponent(D, u, v)
            rows[u][v] = Phase((e + g[v] - g[u]) % 4).gaussian
    return HermitianMatrix(tuple(tuple(r) for r in rows))


# Conditions stated on the partition directly: undirected edges must not join
# V_1/V_-1 or V_i/V_-i, and arcs must not go V_1->V_i, V_i->V_-1, V_-1->V_-i, V_-i->V_1.
_FORBIDDEN_UNDIRECTED = {frozenset({"1", "-1"}), frozenset({"i", "-i"})}
_FORBIDDEN_ARC = {("1", "i"), ("i", "-1"), ("-1", "-i"), ("-i", "1")}


def admissibility_violations(D: MixedGraph, g: GaugePartition) -> list[tuple[tuple[int, int], tuple[str, str], bool]]:
    """Edges breaking the partition conditions, as (edge, type, is_undirected)."""
    bad = []
    for u, v in sorted(D.undirected):
        t = (g[u].label, g[v].label)
        if frozenset(t) in _FORBIDDEN_UNDIRECTED:
            bad.append(((u, v), t, True))
    for u, v in sorted(D.arcs):
        t = (g[u].label, g[v].label)
        if t in _FORBIDDEN_ARC:
            bad.append(((u, v), t, False))
    return bad


def is_admissible(D: MixedGraph, g: GaugePartition) -> bool:
    H = transform_entrywise(D, g)
    minus_one = GaussianInt(-1, 0)
    by_matrix = not any(e == minus_one for row in H.entries for e in row)
    by_rules = not admissibility_violations(D, g)
    assert by_matrix == by_rules, "entrywise and partition admissibility disagree"
    return by_matrix


def matrix_to_graph(H: HermitianMatrix) -> MixedGraph:
    """Inverse of ``hermitian_matrix`` for adjacency-valid matrices."""
    if not H.adjacency_valid:
        raise ValueError("matrix is not a Hermitian adjacency matrix (entries must be 0, 1, i, -i)")
    und, arcs = [], []
    for u in range(H.n):
        for v in range(u + 1, H.n):
            e = H[u, v]
            if e == GaussianInt(1, 0):
                und.append((u, v))
            elif e == GaussianInt(0, 1):
                arcs.append((u, v))
            elif e == GaussianInt(0, -1):
                arcs.append((v, u))
    return MixedGraph.from_edges(H.n, und, arcs)


def apply_four_way(D: MixedGraph, g: GaugePartition) -> MixedGraph:
    bad = admissibility_violations(D, g)
    if bad:
        edge, t, und = bad[0]
        raise InadmissibleGaugeError(edge, t, und)
    return matrix_to_graph(transform_entrywise(D, g))


def _cut(D: MixedGraph, side: set[int]) -> tuple[list, list, list]:
    """Cut edges split into undirected, arcs leaving ``side``, arcs entering it."""
    und = [(u, v) for u, v in D.undirected if (u in side) != (v in side)]
    out_arcs = [(u, v) for u, v in D.arcs if u in side and v not in side]
    in_arcs = [(u, v) for u, v in D.arcs if v in side and u not in side]
    return und, out_arcs, in_arcs


def two_way_mixed(D: MixedGraph, cut_side: Iterable[int]) -> MixedGraph:
    """Arcs of the cut become undirected; undirected cut edges become arcs
    pointing against the former arcs.

    With no arcs in the cut, undirected cut edges become arcs entering
    ``cut_side``.
    """
    side = set(cut_side)
    und, out_arcs, in_arcs = _cut(D, side)
    if out_arcs and in_arcs:
        raise MixedCutError("cut contains arcs in both directions; a mixed 2-way switching needs one direction")
    # arcs X->Y become undirected when S_Y = -i (with S_X = 1); arcs Y->X need S_Y = i
    other = Phase.I if in_arcs else Phase.NEG_I
    g = GaugePartition(tuple(Phase.ONE if v in side else other for v in range(D.n)))
    return apply_four_way(D, g)


def two_way_directed(D: MixedGraph, cut_side: Iterable[int]) -> MixedGraph:
    """Reverse every arc of a cut that has no undirected edges."""
    side = set(cut_side)
    und, _, _ = _cut(D, side)
    if und:
        raise MixedCutError("cut contains undirected edges; a directed 2-way switching needs arcs only")
    g = GaugePartition(tuple(Phase.ONE if v in side else Phase.NEG_ONE for v in range(D.n)))
    return apply_four_way(D, g)


# ---------------------------------------------------------------------------
# Gauge enumeration


def _forbidden_diff(D: MixedGraph, u: int, v: int) -> int:
    # s_v - s_u must avoid the value turning H_uv into -1
    return (2 - _exponent(D, u, v)) % 4


def admissible_gauges(D: MixedGraph, pin_first: bool = True) -> Iterator[GaugePartition]:
    """All admissible gauges, by backtracking in vertex order.

    With ``pin_first`` vertex 0 is fixed to phase 1 (constant gauges act trivially).
    """
    n = D.n
    earlier = [[(u, _forbidden_diff(D, u, v)) for u in D.neighbors[v] if u < v] for v in range(n)]
    s = [0] * n

    def extend(v: int) -> Iterator[GaugePartition]:
        if v == n:
            yield GaugePartition(tuple(s))
            return
        choices = (0,) if (v == 0 and pin_first) else (0, 1, 2, 3)
        for p in choices:
            if all((p - s[u]) % 4 != bad for u, bad in earlier[v]):
                s[v] = p
                yield from extend(v + 1)

    yield from extend(0)


def random_admissible_gauge(D: MixedGraph, rng: random.Random) -> GaugePartition:
    """Uniform random choices with backtracking; always succeeds."""
    n = D.n
    earlier = [[(u, _forbidden_diff(D, u, v)) for u in D.neighbors[v] if u < v] for v in range(n)]
    s = [0] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        choices = [0, 1, 2, 3]
        rng.shuffle(choices)
        for p in choices:
            if all((p - s[u]) % 4 != bad for u, bad in earlier[v]):
                s[v] = p
                if extend(v + 1):
                    return True
        return False

    extend(0)
    return GaugePartition(tuple(s))


# ---------------------------------------------------------------------------
# Equivalence


def gauge_between(base: MixedGraph, target: MixedGraph) -> GaugePartition | None:
    """A gauge ``g`` with ``apply_four_way(base, g) == target``, if one exists.

    Phases are forced along a spanning forest (root of each component gets 1),
    then every edge is checked.
    """
    if base.n != target.n or underlying_graph(base) != underlying_graph(target):
        return None
    s: list[int | None] = [None] * base.n
    for comp in components(base):
        root = comp[0]
        s[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in base.neighbors[u]:
                if s[w] is None:
                    s[w] = (s[u] + _exponent(target, u, w) - _exponent(base, u, w)) % 4
                    queue.append(w)
    for u in range(base.n):
        for w in base.neighbors[u]:
            if (_exponent(base, u, w) + s[w] - s[u]) % 4 != _exponent(target, u, w):
                return None
    return GaugePartition(tuple(s))


@dataclass(frozen=True)
class SwitchingWitness:
    """``relabel(apply_four_way(D1 or converse(D1), gauge), perm) == D2``."""

    gauge: GaugePartition
    converse: bool
    perm: tuple[int, ...]

    def replay(self, D1: MixedGraph) -> MixedGraph:
        base = converse(D1) if self.converse else D1
        return relabel(apply_four_way(base, self.gauge), self.perm)

    def to_json(self) -> dict:
        return {
            "equivalent": True,
            "gauge": self.gauge.labels(),
            "converse": self.converse,
            "perm": list(self.perm),
        }


def _labeled_witness(D1: MixedGraph, D2: MixedGraph, perm: tuple[int, ...]) -> SwitchingWitness | None:
    for flip in (False, True):
        base = converse(D1) if flip else D1
        g = gauge_between(base, D2)
        if g is not None:
            return SwitchingWitness(g, flip, perm)
    return None


def are_switching_equivalent(
    D1: MixedGraph, D2: MixedGraph, up_to_iso: bool = False, cap: int | None = None
) -> SwitchingWitness | None:
    """Witness that D2 is a four-way switching of D1 or of its converse, else None.

    With ``up_to_iso`` the target may additionally be relabelled.  A single
    switching suffices because the gauges form a group and the converse
    conjugates a gauge to another gauge.
    """
    if D1.n != D2.n:
        return None
    n = D1.n
    limit = cap if cap is not None else (ISO_CAP if up_to_iso else LABELED_CAP)
    if n > limit:
        raise SwitchingCapError(f"switching-equivalence search capped at n <= {limit}, got n={n}")
    if D1.num_edges != D2.num_edges:
        return None
    identity = tuple(range(n))
    if not up_to_iso:
        return _labeled_witness(D1, D2, identity)
    G1, G2 = underlying_graph(D1), underlying_graph(D2)
    for perm in iter_isomorphisms(G1, G2, cap=max(limit, n)):
        inverse = [0] * n
        for v, w in enumerate(perm):
            inverse[w] = v
        target = relabel(D2, inverse)
        w = _labeled_witness(D1, target, identity)
        if w is not None:
            return SwitchingWitness(w.gauge, w.converse, tuple(perm))
    return None


def switching_class(D: MixedGraph, cap: int = CLASS_CAP) -> list[MixedGraph]:
    """Every labeled mixed graph switching equivalent to D, sorted by edge sets."""
    if D.n > cap:
        raise SwitchingCapError(f"switching_class capped at n <= {cap}, got n={D.n}")
    found = set()
    for base in (D, converse(D)):
        for g in admissible_gauges(base):
            found.add(matrix_to_graph(transform_entrywise(base, g)))
    return sorted(found, key=MixedGraph.sort_key)
