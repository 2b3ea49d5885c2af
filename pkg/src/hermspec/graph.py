"""Mixed graphs: data model, named families, small-scale isomorphism, edge-list I/O.

Vertices are the integers ``0..n-1``.  Undirected edges are stored as sorted
pairs ``(u, v)`` with ``u < v``; arcs as ordered pairs ``(tail, head)``.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

__all__ = [
    "EdgeKind",
    "MixedGraph",
    "GraphError",
    "EdgeListSyntaxError",
    "IsomorphismCapError",
    "ISO_CAP",
    "parse_edge_list",
    "format_edge_list",
    "underlying_graph",
    "converse",
    "disjoint_union_isolated",
    "relabel",
    "induced_subgraph",
    "gen_family",
    "FAMILIES",
    "iter_isomorphisms",
    "find_isomorphism",
    "are_isomorphic",
    "components",
    "complete_bipartite",
    "c3",
    "path",
    "cycle",
    "directed_cycle",
    "star",
    "k4_minus",
    "complete",
    "empty",
]

ISO_CAP = 10


class GraphError(ValueError):
    """A mixed-graph invariant is violated (loop, digon, overlap, range)."""


class EdgeListSyntaxError(GraphError):
    def __init__(self, lineno: int, line: str, reason: str):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class IsomorphismCapError(ValueError):
    pass


class EdgeKind(enum.Enum):
    """Relation of an ordered vertex pair ``(u, v)``."""

    ABSENT = "absent"
    UNDIRECTED = "undirected"
    ARC_FORWARD = "arc_forward"  # u -> v
    ARC_BACKWARD = "arc_backward"  # v -> u


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class MixedGraph:
    n: int
    undirected: frozenset = field(default_factory=frozenset)
    arcs: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise GraphError(f"vertex count must be a non-negative integer, got {self.n!r}")
        und = set()
        for e in self.undirected:
            u, v = e
            self._check_pair(u, v)
            und.add(_norm(u, v))
        arcs = set()
        for e in self.arcs:
            u, v = e
            self._check_pair(u, v)
            arcs.add((u, v))
        for u, v in arcs:
            if (v, u) in arcs:
                raise GraphError(f"digon between {min(u, v)} and {max(u, v)}")
            if _norm(u, v) in und:
                raise GraphError(f"pair {_norm(u, v)} is both an undirected edge and an arc")
        object.__setattr__(self, "undirected", frozenset(und))
        object.__setattr__(self, "arcs", frozenset(arcs))

    def _check_pair(self, u: int, v: int) -> None:
        if not (isinstance(u, int) and isinstance(v, int)):
            raise GraphError(f"endpoints must be integers, got ({u!r}, {v!r})")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")

    @classmethod
    def from_edges(
        cls,
        n: int,
        undirected: Iterable[tuple[int, int]] = (),
        arcs: Iterable[tuple[int, int]] = (),
    ) -> "MixedGraph":
        return cls(n, frozenset(tuple(e) for e in undirected), frozenset(tuple(a) for a in arcs))

    @property
    def num_edges(self) -> int:
        return len(self.undirected) + len(self.arcs)

    @cached_property
    def _kinds(self) -> dict:
        kinds = {}
        for u, v in self.undirected:
            kinds[(u, v)] = kinds[(v, u)] = EdgeKind.UNDIRECTED
        for u, v in self.arcs:
            kinds[(u, v)] = EdgeKind.ARC_FORWARD
            kinds[(v, u)] = EdgeKind.ARC_BACKWARD
        return kinds

    def edge_kind(self, u: int, v: int) -> EdgeKind:
        return self._kinds.get((u, v), EdgeKind.ABSENT)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Neighbours in the underlying graph, sorted."""
        adj: list[set] = [set() for _ in range(self.n)]
        for (u, v) in self._kinds:
            adj[u].add(v)
        return tuple(tuple(sorted(s)) for s in adj)

    @cached_property
    def degree_signature(self) -> tuple[tuple[int, int, int], ...]:
        """Per vertex: (arc out-degree, arc in-degree, undirected degree)."""
        sig = [[0, 0, 0] for _ in range(self.n)]
        for u, v in self.arcs:
            sig[u][0] += 1
            sig[v][1] += 1
        for u, v in self.undirected:
            sig[u][2] += 1
            sig[v][2] += 1
        return tuple(tuple(s) for s in sig)

    @property
    def is_undirected(self) -> bool:
        return not self.arcs

    def edges_sorted(self) -> tuple[tuple, tuple]:
        return tuple(sorted(self.undirected)), tuple(sorted(self.arcs))

    def sort_key(self) -> tuple:
        return (self.n,) + self.edges_sorted()

    def __repr__(self) -> str:
        und, arcs = self.edges_sorted()
        return f"MixedGraph(n={self.n}, undirected={list(und)}, arcs={list(arcs)})"


# ---------------------------------------------------------------------------
# Edge-list text format


def parse_edge_list(text: str) -> MixedGraph:
    """Parse the ``n <N>`` / ``u -- v`` / ``u -> v`` edge-list format."""
    n = None
    undirected: list[tuple[int, int]] = []
    arcs: list[tuple[int, int]] = []
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise EdgeListSyntaxError(lineno, raw, "expected header 'n <N>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise EdgeListSyntaxError(lineno, raw, "vertex count is not an integer") from None
            if n < 0:
                raise EdgeListSyntaxError(lineno, raw, "negative vertex count")
            continue
        if len(parts) != 3 or parts[1] not in ("--", "->"):
            raise EdgeListSyntaxError(lineno, raw, "expected 'u -- v' or 'u -> v'")
        try:
            u, v = int(parts[0]), int(parts[2])
        except ValueError:
            raise EdgeListSyntaxError(lineno, raw, "endpoints must be integers") from None
        if u == v:
            raise EdgeListSyntaxError(lineno, raw, f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListSyntaxError(lineno, raw, f"vertex out of range [0, {n})")
        key = _norm(u, v)
        if key in seen:
            if parts[1] == "->" and seen[key] == (v, u):
                raise EdgeListSyntaxError(lineno, raw, f"digon between {key[0]} and {key[1]}")
            raise EdgeListSyntaxError(lineno, raw, f"duplicate edge between {key[0]} and {key[1]}")
        if parts[1] == "--":
            undirected.append(key)
            seen[key] = None
        else:
            arcs.append((u, v))
            seen[key] = (u, v)
    if n is None:
        raise EdgeListSyntaxError(0, "", "missing header 'n <N>'")
    return MixedGraph.from_edges(n, undirected, arcs)


def format_edge_list(D: MixedGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"n {D.n}")
    und, arcs = D.edges_sorted()
    lines.extend(f"{u} -- {v}" for u, v in und)
    lines.extend(f"{u} -> {v}" for u, v in arcs)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Basic operations


def underlying_graph(D: MixedGraph) -> MixedGraph:
    return MixedGraph(D.n, D.undirected | {_norm(u, v) for u, v in D.arcs}, frozenset())


def converse(D: MixedGraph) -> MixedGraph:
    return MixedGraph(D.n, D.undirected, frozenset((v, u) for u, v in D.arcs))


def disjoint_union_isolated(D: MixedGraph, t: int) -> MixedGraph:
    """``D ∪ tK_1``: append ``t`` isolated vertices."""
    if t < 0:
        raise ValueError(f"number of isolated vertices must be >= 0, got {t}")
    return MixedGraph(D.n + t, D.undirected, D.arcs)


def relabel(D: MixedGraph, perm: Sequence[int]) -> MixedGraph:
    """Rename vertex ``v`` to ``perm[v]``."""
    if sorted(perm) != list(range(D.n)):
        raise ValueError("perm must be a permutation of range(n)")
    return MixedGraph(
        D.n,
        frozenset(_norm(perm[u], perm[v]) for u, v in D.undirected),
        frozenset((perm[u], perm[v]) for u, v in D.arcs),
    )


def induced_subgraph(D: MixedGraph, vertices: Iterable[int]) -> MixedGraph:
    """Subgraph induced on ``vertices``, renumbered in ascending order."""
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    return MixedGraph(
        len(keep),
        frozenset(_norm(index[u], index[v]) for u, v in D.undirected if u in index and v in index),
        frozenset((index[u], index[v]) for u, v in D.arcs if u in index and v in index),
    )


def components(D: MixedGraph) -> list[list[int]]:
    """Weakly connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * D.n
    out = []
    for s in range(D.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in D.neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


# ---------------------------------------------------------------------------
# Named families.  Parts of multipartite families occupy consecutive blocks.


def _positive(name: str, *sizes: int) -> None:
    for s in sizes:
        if not isinstance(s, int) or s < 1:
            raise ValueError(f"{name}: sizes must be positive integers, got {sizes}")


def complete_bipartite(a: int, b: int) -> MixedGraph:
    _positive("complete_bipartite", a, b)
    return MixedGraph.from_edges(a + b, [(u, v) for u in range(a) for v in range(a, a + b)])


def c3(a: int, b: int, c: int) -> MixedGraph:
    """Complete tripartite digraph, arcs A -> B -> C -> A.

    A = ``0..a-1``, B = ``a..a+b-1``, C = the rest.
    """
    _positive("c3", a, b, c)
    A = range(a)
    B = range(a, a + b)
    C = range(a + b, a + b + c)
    arcs = [(u, v) for u in A for v in B]
    arcs += [(u, v) for u in B for v in C]
    arcs += [(u, v) for u in C for v in A]
    return MixedGraph.from_edges(a + b + c, arcs=arcs)


def path(k: int) -> MixedGraph:
    """Undirected path on ``k`` vertices."""
    _positive("path", k)
    return MixedGraph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle(k: int) -> MixedGraph:
    if k < 3:
        raise ValueError(f"cycle: need k >= 3, got {k}")
    return MixedGraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def directed_cycle(k: int) -> MixedGraph:
    if k < 3:
        raise ValueError(f"directed_cycle: need k >= 3, got {k}")
    return MixedGraph.from_edges(k, arcs=[(i, (i + 1) % k) for i in range(k)])


def star(k: int) -> MixedGraph:
    """``K_{1,k}`` with centre 0."""
    _positive("star", k)
    return MixedGraph.from_edges(k + 1, [(0, v) for v in range(1, k + 1)])


def k4_minus() -> MixedGraph:
    """``K_4`` without the edge {2, 3}."""
    return MixedGraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def complete(k: int) -> MixedGraph:
    _positive("complete", k)
    return MixedGraph.from_edges(k, itertools.combinations(range(k), 2))


def empty(k: int) -> MixedGraph:
    if k < 0:
        raise ValueError(f"empty: need k >= 0, got {k}")
    return MixedGraph(k)


FAMILIES = {
    "complete_bipartite": complete_bipartite,
    "c3": c3,
    "path": path,
    "cycle": cycle,
    "directed_cycle": directed_cycle,
    "star": star,
    "k4_minus": k4_minus,
    "complete": complete,
    "empty": empty,
}


def gen_family(name: str, *params: int) -> MixedGraph:
    try:
        build = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return build(*params)
    except TypeError:
        raise ValueError(f"wrong number of parameters for family {name!r}: {params}") from None


# ---------------------------------------------------------------------------
# Isomorphism by backtracking over degree-compatible assignments


def _iso_cap() -> int:
    return int(os.environ.get("HERMSPEC_MAX_N_ISO", ISO_CAP))


def iter_isomorphisms(D1: MixedGraph, D2: MixedGraph, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every ``perm`` with ``relabel(D1, perm) == D2`` (orientation kept)."""
    cap = _iso_cap() if cap is None else cap
    n = D1.n
    if n > cap:
        raise IsomorphismCapError(f"isomorphism search capped at n <= {cap}, got n={n}")
    if n != D2.n or D1.num_edges != D2.num_edges or len(D1.arcs) != len(D2.arcs):
        return
    sig1, sig2 = D1.degree_signature, D2.degree_signature
    if sorted(sig1) != sorted(sig2):
        return
    # most constrained vertices first: rare signatures, then high degree
    counts: dict = {}
    for s in sig1:
        counts[s] = counts.get(s, 0) + 1
    order = sorted(range(n), key=lambda v: (counts[sig1[v]], -sum(sig1[v])))
    candidates = [[w for w in range(n) if sig2[w] == sig1[v]] for v in order]
    perm = [-1] * n
    used = [False] * n

    def extend(depth: int) -> Iterator[tuple[int, ...]]:
        if depth == n:
            yield tuple(perm)
            return
        v = order[depth]
        for w in candidates[depth]:
            if used[w]:
                continue
            ok = True
            for d in range(depth):
                u = order[d]
                if D1.edge_kind(u, v) is not D2.edge_kind(perm[u], w):
                    ok = False
                    break
            if not ok:
                continue
            perm[v] = w
            used[w] = True
            yield from extend(depth + 1)
            used[w] = False
            perm[v] = -1

    yield from extend(0)


def find_isomorphism(D1: MixedGraph, D2: MixedGraph, cap: int | None = None) -> tuple[int, ...] | None:
    return next(iter_isomorphisms(D1, D2, cap), None)


def are_isomorphic(D1: MixedGraph, D2: MixedGraph, cap: int | None = None) -> bool:
    cap = _iso_cap() if cap is None else cap
    if max(D1.n, D2.n) > cap:
        raise IsomorphismCapError(f"isomorphism search capped at n <= {cap}, got n={max(D1.n, D2.n)}")
    return find_isomorphism(D1, D2, cap) is not None
