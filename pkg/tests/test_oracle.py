import io
import random

import pytest
from hypothesis import given

from hermspec import oracle
from hermspec.graph import complete, complete_bipartite, converse, star
from hermspec.spectral import graph_char_poly, graph_rank
from hermspec.structure import Rank2Form, classify_rank2
from hermspec.switching import are_switching_equivalent
from strategies import mixed_graphs


# -- encoding --------------------------------------------------------------


def test_counts():
    assert [oracle.num_graphs(n) for n in range(1, 6)] == [1, 4, 64, 4096, 1_048_576]


def test_encoding_examples():
    # pair order (0,1), (0,2), (1,2); two bits each, lowest pair first
    D = oracle.decode(3, 0b11_10_01)
    assert D.undirected == {(0, 1)} and D.arcs == {(0, 2), (2, 1)}
    assert oracle.encode(D) == 0b11_10_01
    with pytest.raises(ValueError):
        oracle.decode(2, 4)


@given(mixed_graphs(max_n=7))
def test_encode_decode_round_trip(D):
    assert oracle.decode(D.n, oracle.encode(D)) == D


def test_all_mixed_graphs_distinct():
    graphs = list(oracle.all_mixed_graphs(3))
    assert len(graphs) == 64 and len(set(graphs)) == 64


# -- census ----------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_census_partitions_everything(n):
    c = oracle.build_census(n)
    assert c.total == oracle.num_graphs(n)
    for key, codes in c.classes.items():
        for code in codes[:5]:
            assert graph_char_poly(oracle.decode(n, code)).coeffs == key


def test_census_closed_under_converse():
    c = oracle.build_census(4)
    for codes in c.classes.values():
        members = set(codes)
        for code in codes:
            assert oracle.encode(converse(oracle.decode(4, code))) in members


@pytest.mark.parametrize("n", [3, 4])
def test_census_rank2_buckets_are_edge_classes(n):
    """Rank-2 char polys are t^(n-2)(t^2 - e): one bucket per edge count."""
    c = oracle.build_census(n)
    seen = {}
    for key, codes in c.classes.items():
        D = oracle.decode(n, codes[0])
        if graph_rank(D) == 2:
            e = D.num_edges
            assert key == tuple([0] * (n - 2) + [-e, 0, 1])
            assert all(oracle.decode(n, x).num_edges == e for x in codes)
            seen[e] = len(codes)
    assert set(seen) == ({1, 2, 3} if n == 3 else {1, 2, 3, 4, 5})


def test_census_jsonl_round_trip():
    c = oracle.build_census(3)
    buf = io.StringIO()
    c.write_jsonl(buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == len(c.classes)
    again = oracle.Census.read_jsonl(io.StringIO(buf.getvalue()))
    assert again == c
    with pytest.raises(ValueError):
        oracle.Census.read_jsonl([])


def test_census_worker_count_independent():
    assert oracle.build_census(4, workers=3) == oracle.build_census(4)


def test_census_copy_is_independent():
    a = oracle.build_census(3)
    a.classes.clear()
    assert oracle.build_census(3).total == 64


def test_cap(monkeypatch):
    with pytest.raises(oracle.OracleCapError):
        oracle.build_census(7)
    with pytest.raises(oracle.OracleCapError):
        oracle.build_census(6)
    monkeypatch.setenv("HERMSPEC_MAX_N", "2")
    with pytest.raises(oracle.OracleCapError):
        oracle.build_census(3)
    assert oracle.build_census(3, cap=3).total == 64


# -- brute-force switching and DHS ----------------------------------------


@given(mixed_graphs(max_n=5))
def test_bruteforce_equivalence_agrees_with_propagation(D):
    r = random.Random(oracle.encode(D))
    E = oracle.random_mixed_graph(D.n, r) if r.random() < 0.5 else converse(D)
    assert (oracle.switching_equivalent_bruteforce(D, E) is not None) == (
        are_switching_equivalent(D, E) is not None
    )


def test_dhs_bruteforce_complete_graphs():
    assert oracle.verify_dhs_bruteforce(complete(3))
    assert oracle.verify_dhs_bruteforce(complete(4))


def test_dhs_bruteforce_star_finds_rank2_mate():
    bad = oracle.dhs_counterexamples(star(3))
    assert bad
    forms = {classify_rank2(oracle.decode(4, code)) for code in bad}
    assert forms == {Rank2Form("C3", (1, 1, 1), 1)}


def test_dhs_bruteforce_k22():
    # no other rank-2 form has 4 edges on 4 vertices
    assert oracle.verify_dhs_bruteforce(complete_bipartite(2, 2))


# -- theorem reports -------------------------------------------------------


@pytest.mark.parametrize("name", ["thm41", "thm42", "thm58"])
def test_exhaustive_theorems_small(name):
    rep = oracle.verify_theorem(name, 3)
    assert rep.passed and rep.checked == 64
    js = rep.to_json()
    assert js["theorem"] == name and js["passed"]


def test_sampled_theorems():
    rep = oracle.verify_theorem("thm33", 5, samples=100)
    assert rep.passed and rep.notes["exhaustive_pairs"] > 0
    rep = oracle.verify_theorem("thm34", 7, samples=20, inner=5)
    assert rep.passed and rep.checked == 100


def test_theorem_errors():
    with pytest.raises(ValueError):
        oracle.verify_theorem("thm99", 3)
    with pytest.raises(oracle.OracleCapError):
        oracle.verify_theorem("thm33", 9)
    with pytest.raises(oracle.OracleCapError):
        oracle.verify_theorem("thm34", 11)
    with pytest.raises(oracle.OracleCapError):
        oracle.verify_theorem("thm58", 7)


def test_empty_report_does_not_pass():
    assert not oracle.TheoremReport("thm41", 0).passed


def test_random_generators():
    r = random.Random(1)
    F = oracle.random_forest(9, r)
    assert F.num_edges < 9 and not F.arcs
    D = oracle.random_orientation(F, r)
    assert D.num_edges == F.num_edges
    assert graph_char_poly(D) == graph_char_poly(F)
