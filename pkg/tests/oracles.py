"""Independent reference implementations used only by the tests.

None of these share code paths with the library's kernels: char polys and
ranks come from sympy, eigenvalues from LAPACK via numpy, switching from the
edge-type rewrite rules, isomorphism from networkx.
"""

from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
import sympy

from hermspec.graph import MixedGraph

I = sympy.I


def sympy_matrix(D: MixedGraph) -> sympy.Matrix:
    M = sympy.zeros(D.n, D.n)
    for u, v in D.undirected:
        M[u, v] = M[v, u] = 1
    for u, v in D.arcs:
        M[u, v] = I
        M[v, u] = -I
    return M


def sympy_charpoly(D: MixedGraph) -> tuple[int, ...]:
    """Coefficients, constant term first, of det(tI - H) by sympy."""
    if D.n == 0:
        return (1,)
    t = sympy.Symbol("t")
    p = sympy_matrix(D).charpoly(t)
    coeffs = [sympy.nsimplify(sympy.expand(c)) for c in reversed(p.all_coeffs())]
    out = []
    for c in coeffs:
        c = sympy.simplify(c)
        assert sympy.im(c) == 0, c
        out.append(int(c))
    return tuple(out)


def sympy_rank(D: MixedGraph) -> int:
    return sympy_matrix(D).rank(simplify=True) if D.n else 0


def numpy_matrix(D: MixedGraph) -> np.ndarray:
    H = np.zeros((D.n, D.n), dtype=complex)
    for u, v in D.undirected:
        H[u, v] = H[v, u] = 1
    for u, v in D.arcs:
        H[u, v] = 1j
        H[v, u] = -1j
    return H


def numpy_eigenvalues(D: MixedGraph) -> np.ndarray:
    """Descending eigenvalues by LAPACK's Hermitian solver."""
    if D.n == 0:
        return np.zeros(0)
    return np.sort(np.linalg.eigvalsh(numpy_matrix(D)))[::-1]


# Phases as labels; the rewrite rules are stated on types (j, k).
_FORBIDDEN_DIGON = {frozenset({"1", "-1"}), frozenset({"i", "-i"})}
# digon of type (j, k) -> arc from -> to
_DIGON_TO_ARC = {
    frozenset({"1", "i"}): ("1", "i"),
    frozenset({"-1", "-i"}): ("-1", "-i"),
    frozenset({"1", "-i"}): ("-i", "1"),
    frozenset({"-1", "i"}): ("i", "-1"),
}
_REVERSE = {("1", "-1"), ("-1", "1"), ("i", "-i"), ("-i", "i")}
_FORBIDDEN_ARC = {("1", "i"), ("i", "-1"), ("-1", "-i"), ("-i", "1")}
_ARC_TO_DIGON = {("1", "-i"), ("-1", "i"), ("i", "1"), ("-i", "-1")}


class RuleViolation(Exception):
    pass


def switch_by_rules(D: MixedGraph, labels: list[str]) -> MixedGraph:
    """Four-way switching by the edge-type rewrite rules; raises on inadmissible."""
    und, arcs = [], []
    for x, y in D.undirected:
        j, k = labels[x], labels[y]
        if j == k:
            und.append((x, y))
            continue
        key = frozenset({j, k})
        if key in _FORBIDDEN_DIGON:
            raise RuleViolation(("digon", x, y, j, k))
        src, _ = _DIGON_TO_ARC[key]
        arcs.append((x, y) if j == src else (y, x))
    for x, y in D.arcs:
        t = (labels[x], labels[y])
        if t[0] == t[1]:
            arcs.append((x, y))
        elif t in _REVERSE:
            arcs.append((y, x))
        elif t in _FORBIDDEN_ARC:
            raise RuleViolation(("arc", x, y) + t)
        else:
            assert t in _ARC_TO_DIGON
            und.append((x, y))
    return MixedGraph.from_edges(D.n, und, arcs)


def rules_admissible(D: MixedGraph, labels: list[str]) -> bool:
    try:
        switch_by_rules(D, labels)
    except RuleViolation:
        return False
    return True


def to_networkx(D: MixedGraph) -> nx.DiGraph:
    """Undirected edges as two labelled arcs, arcs as one, so isomorphism matches."""
    G = nx.DiGraph()
    G.add_nodes_from(range(D.n))
    for u, v in D.undirected:
        G.add_edge(u, v, k="u")
        G.add_edge(v, u, k="u")
    for u, v in D.arcs:
        G.add_edge(u, v, k="a")
    return G


def nx_isomorphic(D1: MixedGraph, D2: MixedGraph) -> bool:
    return nx.is_isomorphic(
        to_networkx(D1), to_networkx(D2), edge_match=lambda a, b: a["k"] == b["k"]
    )


def brute_switching_equivalent(D1: MixedGraph, D2: MixedGraph) -> bool:
    """Labeled equivalence via the rewrite rules over every gauge and the converse."""
    from hermspec.graph import converse

    if D1.n != D2.n:
        return False
    names = ["1", "i", "-1", "-i"]
    for base in (D1, converse(D1)):
        for labels in itertools.product(names, repeat=D1.n):
            try:
                if switch_by_rules(base, list(labels)) == D2:
                    return True
            except RuleViolation:
                pass
    return False
