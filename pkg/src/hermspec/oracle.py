"""Exhaustive enumeration of labeled mixed graphs and theorem checks at small n.

Graph encoding: the pairs ``(u, v)``, ``u < v``, in lexicographic order get two
bits each (0 absent, 1 undirected, 2 arc u->v, 3 arc v->u); pair ``k`` occupies
bits ``2k, 2k+1``.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, TextIO

from . import _kernels
from .graph import MixedGraph, components, converse, induced_subgraph, relabel, underlying_graph
from .spectral import (
    EIG_TOL,
    CharPoly,
    are_antispectral,
    are_cospectral,
    eigenvalues,
    graph_char_poly,
    hermitian_matrix,
)
from .structure import Rank2Form, antispectral_partition, classify_rank2, cospectral_partition
from .switching import (
    GaugePartition,
    apply_four_way,
    are_switching_equivalent,
    is_admissible,
    random_admissible_gauge,
    switching_class,
    transform_entrywise,
)

__all__ = [
    "DEFAULT_MAX_N",
    "HARD_MAX_N",
    "OracleCapError",
    "encode",
    "decode",
    "num_graphs",
    "all_mixed_graphs",
    "Census",
    "build_census",
    "switching_equivalent_bruteforce",
    "iso_switching_closure",
    "dhs_counterexamples",
    "verify_dhs_bruteforce",
    "TheoremReport",
    "verify_theorem",
    "THEOREMS",
    "random_mixed_graph",
    "random_forest",
]

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 5
HARD_MAX_N = 6


class OracleCapError(ValueError):
    pass


def _cap(default: int = DEFAULT_MAX_N) -> int:
    env = os.environ.get("HERMSPEC_MAX_N")
    return int(env) if env else default


def _check_cap(n: int, cap: int | None) -> None:
    limit = _cap() if cap is None else cap
    if n > limit:
        raise OracleCapError(f"enumeration capped at n <= {limit} (set HERMSPEC_MAX_N to override), got n={n}")
    if n > DEFAULT_MAX_N:
        log.warning("enumerating 4^%d labeled mixed graphs on %d vertices; this can take a long time", n * (n - 1) // 2, n)


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def num_graphs(n: int) -> int:
    return 4 ** (n * (n - 1) // 2)


def encode(D: MixedGraph) -> int:
    code = 0
    for k, (u, v) in enumerate(_pairs(D.n)):
        if (u, v) in D.undirected:
            state = 1
        elif (u, v) in D.arcs:
            state = 2
        elif (v, u) in D.arcs:
            state = 3
        else:
            continue
        code |= state << (2 * k)
    return code


def decode(n: int, code: int) -> MixedGraph:
    und, arcs = [], []
    for u, v in _pairs(n):
        state = code & 3
        code >>= 2
        if state == 1:
            und.append((u, v))
        elif state == 2:
            arcs.append((u, v))
        elif state == 3:
            arcs.append((v, u))
    if code:
        raise ValueError("code has bits beyond the pairs of an n-vertex graph")
    return MixedGraph.from_edges(n, und, arcs)


def all_mixed_graphs(n: int, cap: int | None = None) -> Iterator[MixedGraph]:
    _check_cap(n, cap)
    for code in range(num_graphs(n)):
        yield decode(n, code)


# ---------------------------------------------------------------------------
# Parallel map over code ranges


def _ranges(total: int, pieces: int) -> list[tuple[int, int]]:
    pieces = max(1, min(pieces, total))
    step = -(-total // pieces)
    return [(s, min(s + step, total)) for s in range(0, total, step)]


def _map_ranges(fn: Callable, n: int, workers: int | None, pieces_per_worker: int = 4) -> list:
    """``fn(n, start, stop)`` over a partition of the code range, results in range order."""
    total = num_graphs(n)
    workers = workers or 1
    ranges = _ranges(total, workers * pieces_per_worker if workers > 1 else 1)
    if workers <= 1:
        return [fn(n, s, e) for s, e in ranges]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, n, s, e) for s, e in ranges]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# Census


@dataclass
class Census:
    """Labeled mixed graphs on ``n`` vertices bucketed by exact char poly."""

    n: int
    classes: dict[tuple[int, ...], list[int]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(len(v) for v in self.classes.values())

    def bucket(self, D: MixedGraph) -> list[int]:
        return self.classes.get(graph_char_poly(D).coeffs, [])

    def charpolys(self) -> list[CharPoly]:
        return [CharPoly(k) for k in sorted(self.classes)]

    def write_jsonl(self, fh: TextIO) -> None:
        for key in sorted(self.classes):
            fh.write(json.dumps({"n": self.n, "charpoly": list(key), "members": self.classes[key]}) + "\n")

    @classmethod
    def read_jsonl(cls, fh: Iterable[str]) -> "Census":
        census = None
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            if census is None:
                census = cls(rec["n"])
            census.classes[tuple(rec["charpoly"])] = list(rec["members"])
        if census is None:
            raise ValueError("empty census file")
        return census


def _census_chunk(n: int, start: int, stop: int) -> dict[tuple[int, ...], list[int]]:
    out: dict[tuple[int, ...], list[int]] = {}
    for code, key in zip(range(start, stop), _kernels.census_charpolys(n, start, stop)):
        out.setdefault(key, []).append(code)
    return out


@lru_cache(maxsize=8)
def _cached_census(n: int) -> Census:
    return _build(n, None)


def _build(n: int, workers: int | None) -> Census:
    merged: dict[tuple[int, ...], list[int]] = {}
    for part in _map_ranges(_census_chunk, n, workers):
        for key, codes in part.items():
            merged.setdefault(key, []).extend(codes)
    for codes in merged.values():
        codes.sort()
    return Census(n, merged)


def build_census(n: int, workers: int | None = None, cap: int | None = None) -> Census:
    _check_cap(n, cap)
    if workers and workers > 1:
        return _build(n, workers)
    census = _cached_census(n)
    return Census(n, {k: list(v) for k, v in census.classes.items()})


# ---------------------------------------------------------------------------
# Brute-force switching and DHS


def switching_equivalent_bruteforce(D1: MixedGraph, D2: MixedGraph) -> tuple[GaugePartition, bool] | None:
    """Labeled equivalence by trying all 4^(n-1) gauges on D1 and its converse."""
    if D1.n != D2.n:
        return None
    n = D1.n
    for flip in (False, True):
        base = converse(D1) if flip else D1
        for rest in itertools.product(range(4), repeat=max(n - 1, 0)):
            g = GaugePartition((0,) + rest if n else ())
            if is_admissible(base, g) and apply_four_way(base, g) == D2:
                return g, flip
    return None


def iso_switching_closure(D: MixedGraph) -> set[int]:
    """Codes of every labeled graph switching equivalent to a relabeling of D."""
    out = set()
    for E in switching_class(D):
        for perm in itertools.permutations(range(D.n)):
            out.add(encode(relabel(E, perm)))
    return out


def dhs_counterexamples(D: MixedGraph, cap: int | None = None) -> list[int]:
    """Codes cospectral with D but not switching equivalent to it up to isomorphism."""
    _check_cap(D.n, cap)
    census = _cached_census(D.n)
    closure = iso_switching_closure(D)
    return [code for code in census.bucket(D) if code not in closure]


def verify_dhs_bruteforce(D: MixedGraph, cap: int | None = None) -> bool:
    return not dhs_counterexamples(D, cap)


# ---------------------------------------------------------------------------
# Theorem checks


@dataclass
class TheoremReport:
    name: str
    n: int
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.counterexamples

    def to_json(self) -> dict:
        return {
            "theorem": self.name,
            "n": self.n,
            "checked": self.checked,
            "passed": self.passed,
            "counterexamples": self.counterexamples[:20],
            "notes": self.notes,
        }


def random_mixed_graph(n: int, rng: random.Random) -> MixedGraph:
    pairs = n * (n - 1) // 2
    return decode(n, rng.getrandbits(2 * pairs) if pairs else 0)


def random_forest(n: int, rng: random.Random, attach: float = 0.85) -> MixedGraph:
    """Undirected forest: each vertex joins a random earlier vertex with prob. ``attach``."""
    edges = [(rng.randrange(v), v) for v in range(1, n) if rng.random() < attach]
    return MixedGraph.from_edges(n, edges)


def random_orientation(G: MixedGraph, rng: random.Random) -> MixedGraph:
    """Each edge independently undirected or one of its two arcs."""
    und, arcs = [], []
    for u, v in sorted(G.undirected):
        r = rng.randrange(3)
        if r == 0:
            und.append((u, v))
        elif r == 1:
            arcs.append((u, v))
        else:
            arcs.append((v, u))
    return MixedGraph.from_edges(G.n, und, arcs)


def _per_component(D: MixedGraph, G: MixedGraph) -> list[tuple[float, float, float]]:
    """(lambda_1(G_c), lambda_1(D_c), lambda_n(D_c)) for each component."""
    out = []
    for comp in components(D):
        sd = eigenvalues(hermitian_matrix(induced_subgraph(D, comp)))
        sg = eigenvalues(hermitian_matrix(induced_subgraph(G, comp)))
        out.append((sg[0], sd[0], sd[-1]))
    return out


def _thm41_chunk(n: int, start: int, stop: int) -> tuple[int, list]:
    bad = []
    for code in range(start, stop):
        D = decode(n, code)
        G = underlying_graph(D)
        a = are_cospectral(D, G)
        b = all(abs(lg - ld) < EIG_TOL for lg, ld, _ in _per_component(D, G))
        cert = cospectral_partition(D)
        c = cert is not None
        if c and transform_entrywise(D, cert.partition) != hermitian_matrix(G):
            c = False
        d = are_switching_equivalent(D, G) is not None
        if not (a == b == c == d):
            bad.append({"code": code, "a": a, "b": b, "c": c, "d": d})
    return stop - start, bad


def _thm42_chunk(n: int, start: int, stop: int) -> tuple[int, list]:
    bad = []
    for code in range(start, stop):
        D = decode(n, code)
        G = underlying_graph(D)
        a = are_antispectral(D, G)
        b = all(abs(lg + ln) < EIG_TOL for lg, _, ln in _per_component(D, G))
        c = antispectral_partition(D) is not None
        if not (a == b == c):
            bad.append({"code": code, "a": a, "b": b, "c": c})
    return stop - start, bad


def _thm58_chunk(n: int, start: int, stop: int) -> tuple[int, list, int]:
    bad = []
    rank2 = 0
    ranks = _kernels.census_ranks(n, start, stop)
    polys = _kernels.census_charpolys(n, start, stop)
    for code, r, poly in zip(range(start, stop), ranks, polys):
        # rank from elimination vs rank from the multiplicity of the root 0
        zero_mult = next(k for k, c in enumerate(poly) if c != 0 or k == n)
        if r != n - zero_mult:
            bad.append({"code": code, "reason": "rank mismatch", "bareiss": r, "charpoly": n - zero_mult})
            continue
        D = decode(n, code)
        res = classify_rank2(D)
        if isinstance(res, Rank2Form) != (r == 2):
            bad.append({"code": code, "reason": "form iff rank 2 violated", "rank": r})
            continue
        if isinstance(res, Rank2Form):
            rank2 += 1
            realized = res.realize()
            if graph_char_poly(realized).coeffs != tuple(poly) or res.n != n or res.edges != D.num_edges:
                bad.append({"code": code, "reason": "form not cospectral", "form": str(res)})
    return stop - start, bad, rank2


def _run_chunks(fn, n: int, workers: int | None) -> tuple[int, list, list]:
    results = _map_ranges(fn, n, workers)
    checked = sum(r[0] for r in results)
    bad = [b for r in results for b in r[1]]
    return checked, bad, results


def verify_theorem(
    name: str,
    n: int,
    samples: int | None = None,
    inner: int = 50,
    seed: int = 0,
    workers: int | None = None,
    cap: int | None = None,
) -> TheoremReport:
    """Check one theorem; exhaustive for thm41/thm42/thm58, sampled for thm33/thm34.

    For sampled theorems ``n`` is the largest vertex count drawn.
    """
    if name not in THEOREMS:
        raise ValueError(f"unknown theorem {name!r}; choose from {sorted(THEOREMS)}")
    report = TheoremReport(name, n)
    rng = random.Random(seed)
    if name in ("thm41", "thm42", "thm58"):
        _check_cap(n, cap)
        fn = {"thm41": _thm41_chunk, "thm42": _thm42_chunk, "thm58": _thm58_chunk}[name]
        checked, bad, results = _run_chunks(fn, n, workers)
        report.checked, report.counterexamples = checked, bad
        if name == "thm58":
            report.notes["rank2_graphs"] = sum(r[2] for r in results)
        return report
    if name == "thm33":
        if n > 8:
            raise OracleCapError(f"thm33 sampling capped at n <= 8, got n={n}")
        samples = 1000 if samples is None else samples
        for _ in range(samples):
            D = random_mixed_graph(rng.randint(1, n), rng)
            g = random_admissible_gauge(D, rng)
            if graph_char_poly(apply_four_way(D, g)) != graph_char_poly(D):
                report.counterexamples.append({"n": D.n, "code": encode(D), "gauge": g.labels()})
            report.checked += 1
        exhaustive = 0
        for m in range(1, min(n, 3) + 1):
            for code in range(num_graphs(m)):
                D = decode(m, code)
                p = graph_char_poly(D)
                for phases in itertools.product(range(4), repeat=m):
                    g = GaugePartition(phases)
                    if not is_admissible(D, g):
                        continue
                    exhaustive += 1
                    if graph_char_poly(apply_four_way(D, g)) != p:
                        report.counterexamples.append({"n": m, "code": code, "gauge": g.labels()})
        report.checked += exhaustive
        report.notes["exhaustive_pairs"] = exhaustive
        return report
    # thm34
    if n > 10:
        raise OracleCapError(f"thm34 sampling capped at n <= 10, got n={n}")
    samples = 200 if samples is None else samples
    for _ in range(samples):
        F = random_forest(rng.randint(1, n), rng)
        p = graph_char_poly(F)
        for _ in range(inner):
            D = random_orientation(F, rng)
            if graph_char_poly(D) != p:
                report.counterexamples.append({"n": D.n, "code": encode(D)})
            report.checked += 1
    return report


THEOREMS = {
    "thm33": "four-way switching preserves the spectrum",
    "thm34": "all mixed graphs on a forest are cospectral with it",
    "thm41": "cospectral with underlying graph <=> equal lambda_1 <=> phase partition <=> switching equivalent",
    "thm42": "antispectral to underlying graph <=> lambda_1(G) = -lambda_n(D) <=> phase partition",
    "thm58": "rank 2 <=> switching equivalent to K_{a,b} or C3(a,b,c) plus isolated vertices",
}
