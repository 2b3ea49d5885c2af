import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermspec.dhs import (
    CorollaryDisagreement,
    EisensteinSolution,
    cor513_deciders,
    cor513_is_dhs,
    cor513_mate,
    eisenstein_solutions,
    is_dhs_rank2,
    knn_row,
    mates_by_factoring,
    mates_rank2,
    prime_factors,
    prop59_witnesses,
    prop510_mate,
    table_knn,
)
from hermspec.spectral import graph_char_poly
from hermspec.structure import Rank2Form

K = lambda a, b, t=0: Rank2Form("K", (a, b), t)  # noqa: E731
C = lambda a, b, c, t=0: Rank2Form("C3", (a, b, c), t)  # noqa: E731


def brute_mates(e, n):
    """Every part multiset with the right edge count, by plain nested loops."""
    out = set()
    for a in range(1, n + 1):
        for b in range(a, n + 1 - a):
            if a * b == e:
                out.add(K(a, b, n - a - b))
            for c in range(b, n + 1 - a - b):
                if a * b + a * c + b * c == e:
                    out.add(C(a, b, c, n - a - b - c))
    return out


# -- mate enumeration ------------------------------------------------------


def test_mates_examples():
    assert set(mates_rank2(64, 16)) == {K(8, 8), C(4, 4, 6, 2)}
    assert set(mates_rank2(3, 4)) == {K(1, 3), C(1, 1, 1, 1)}
    assert set(mates_rank2(1, 2)) == {K(1, 1)}


def test_mates_errors():
    with pytest.raises(ValueError):
        mates_rank2(0, 4)
    with pytest.raises(ValueError):
        mates_rank2(3, 1)


@pytest.mark.parametrize("e,n", list(itertools.product(range(1, 41), range(2, 17))))
def test_mates_match_brute_force(e, n):
    ms = mates_rank2(e, n)
    assert set(ms) == brute_mates(e, n)
    assert set(ms) == set(mates_by_factoring(e, n))
    assert len(set(ms)) == len(ms)


def test_factoring_filter_k88():
    assert mates_by_factoring(64, 16) == mates_rank2(64, 16)


@pytest.mark.parametrize("e,n", [(12, 8), (24, 9), (64, 16), (27, 12), (45, 14)])
def test_mates_are_mutually_cospectral(e, n):
    forms = list(mates_rank2(e, n))
    polys = {graph_char_poly(f.realize()) for f in forms}
    assert len(polys) == 1
    assert polys == {forms[0].charpoly()}
    for f in forms:
        assert f.edges == e and f.n == n


def test_mate_set_order_and_json():
    ms = mates_rank2(64, 16)
    assert [m.form for m in ms] == ["K", "C3"]
    js = ms.to_json()
    assert js["edges"] == 64 and js["vertices"] == 16 and len(js["mates"]) == 2


# -- DHS decisions ---------------------------------------------------------


def test_is_dhs_examples():
    assert is_dhs_rank2(K(5, 5))[0]
    ok, ms = is_dhs_rank2(K(4, 4))
    assert not ok and C(2, 2, 3, 1) in ms


def test_c3_nnn_dhs():
    for n in range(1, 21):
        assert is_dhs_rank2(C(n, n, n))[0]


def test_c3_small_excess_families():
    """C3(n,n,n), C3(n,n,n+1), C3(n-1,n,n), C3(n,n,n+2) are DHS for n <= 30."""
    for n in range(1, 31):
        assert is_dhs_rank2(C(n, n, n))[0]
        assert is_dhs_rank2(C(n, n, n + 1))[0]
        assert is_dhs_rank2(C(n, n, n + 2))[0]
        if n >= 2:
            assert is_dhs_rank2(C(n - 1, n, n))[0]


def test_c3_n_n_n_plus_3_has_mates():
    """C3(n-1, n+2, n+2) has the same edge and vertex counts as C3(n, n, n+3)."""
    for n in range(1, 31):
        ok, ms = is_dhs_rank2(C(n, n, n + 3))
        mate = C(n - 1, n + 2, n + 2) if n > 1 else K(3, 3)
        assert not ok and mate in ms
    # exact char poly check on the smallest tripartite case
    assert graph_char_poly(C(2, 2, 5).realize()) == graph_char_poly(C(1, 4, 4).realize())


# -- Table of K_{n,n} ------------------------------------------------------

EXPECTED_TABLE = {
    2: [],
    3: [C(4, 1, 1)],
    4: [C(3, 2, 2, 1)],
    5: [],
    6: [C(6, 3, 2, 1), C(8, 2, 2)],
    7: [C(9, 4, 1)],
    8: [C(6, 4, 4, 2)],
    9: [C(7, 6, 3, 2), C(12, 3, 3)],
    10: [C(11, 6, 2, 1)],
    11: [C(10, 7, 3, 2)],
    12: [C(8, 8, 5, 3), C(9, 6, 6, 3), C(12, 6, 4, 2), C(14, 6, 3, 1), C(16, 4, 4)],
}


def test_table_matches_exhaustive_enumeration():
    rows = table_knn(12)
    assert [r.n for r in rows] == list(range(2, 13))
    for r in rows:
        assert list(r.mates) == EXPECTED_TABLE[r.n]
        assert r.dhs == (not EXPECTED_TABLE[r.n])
        assert set(r.mates) | {K(r.n, r.n)} == brute_mates(r.n * r.n, 2 * r.n)


def test_table_rows_agreeing_with_published_rows():
    assert knn_row(2).dhs and knn_row(5).dhs
    assert list(knn_row(6).mates) == [C(6, 3, 2, 1), C(8, 2, 2)]
    assert set(knn_row(12).mates) == {C(8, 8, 5, 3), C(9, 6, 6, 3), C(12, 6, 4, 2), C(14, 6, 3, 1), C(16, 4, 4)}


def test_table_rows_that_are_not_dhs_despite_the_published_table():
    # K_{3,3} ~ C3(1,1,4) and K_{7,7} ~ C3(1,4,9): exact char polys agree
    for n, mate in [(3, C(1, 1, 4)), (7, C(1, 4, 9)), (9, C(3, 3, 12))]:
        assert graph_char_poly(K(n, n).realize()) == graph_char_poly(mate.realize())
        assert mate in knn_row(n).mates


def test_table_scaling_law():
    """A tripartite mate (a,b,c) of K_{m,m} scales to (ta,tb,tc) for K_{tm,tm}."""
    for n in range(2, 9):
        for mate in knn_row(n).mates:
            for t in (2, 3):
                scaled = set(mates_rank2(t * t * n * n, 2 * t * n))
                assert Rank2Form("C3", tuple(t * p for p in mate.parts), t * mate.t) in scaled


def test_table_errors():
    with pytest.raises(ValueError):
        table_knn(1)


# -- explicit families -----------------------------------------------------


def test_prop510_examples():
    assert prop510_mate(4, 2, 1, 1, 2) == C(1, 2, 2, 1)
    assert prop510_mate(4, 2, 1, 1, 2).edges == 8
    f = prop510_mate(9, 3, 1, 2, 3)
    assert f == C(1, 3, 6, 2) and f.edges == 27
    with pytest.raises(ValueError):
        prop510_mate(4, 2, 1, 1, 1)
    with pytest.raises(ValueError):
        prop510_mate(4, 3, 1, 2, 5)
    with pytest.raises(ValueError):
        prop510_mate(4, 2, 1, 2, 5)


@given(st.integers(1, 6), st.integers(1, 5), st.integers(1, 5), st.integers(1, 40))
def test_prop510_is_a_mate(k, a, b, extra):
    p = a + b
    m = k * p * p
    t = a * b * m // (p * p)
    n = t + extra
    f = prop510_mate(m, p, a, b, n)
    assert f in mates_rank2(m * n, m + n)
    assert K(min(m, n), max(m, n)) in mates_rank2(m * n, m + n)


def test_eisenstein_examples():
    assert eisenstein_solutions(7) == [EisensteinSolution(7, 3, 5)]
    assert eisenstein_solutions(13) == [EisensteinSolution(13, 7, 8)]
    assert eisenstein_solutions(6) == []
    for a in range(1, 100):
        for s in eisenstein_solutions(a):
            assert s.a ** 2 == s.p ** 2 + s.q ** 2 + s.p * s.q and 1 <= s.p <= s.q < a


def test_prime_factors():
    assert prime_factors(1) == []
    assert prime_factors(84) == [2, 3, 7]
    assert prime_factors(97) == [97]


def test_cor513_examples():
    assert not cor513_is_dhs(25, 7)
    mate = cor513_mate(25, 7)
    assert mate == C(17, 28, 30) and mate.edges == 3 * 25 ** 2 - 49 == 1826
    assert cor513_is_dhs(10, 4) and cor513_mate(10, 4) is None
    assert cor513_is_dhs(2, 1)
    with pytest.raises(ValueError):
        cor513_is_dhs(10, 5)  # a^2 >= 2n
    with pytest.raises(ValueError):
        cor513_is_dhs(3, 3)


def test_cor513_deciders_agree():
    for a in range(1, 201):
        eq, pr = cor513_deciders(a)
        assert eq == pr, a


def test_cor513_cross_checked_against_mate_enumeration():
    for n in range(2, 40):
        for a in range(1, n):
            if a * a >= 2 * n:
                break
            form = C(n - a, n, n + a)
            assert cor513_is_dhs(n, a) == is_dhs_rank2(form)[0], (n, a)


def test_corollary_disagreement_is_an_error_type():
    assert issubclass(CorollaryDisagreement, AssertionError)


def test_prop59_witnesses():
    w = prop59_witnesses(12)
    assert {4, 6, 8, 9, 10, 11, 12} <= set(w)
    assert sorted(w) == [3, 4, 6, 7, 8, 9, 10, 11, 12]
    assert prop59_witnesses(3) == {3: C(1, 1, 4)}
    assert prop59_witnesses(2) == {}
