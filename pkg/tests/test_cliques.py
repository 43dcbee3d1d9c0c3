import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ramsey_search.cliques import (MalformedColoring, bad_edge_set, cliques_through_edges,
                                   count_all, count_cliques, recount_delta, verify)
from ramsey_search.coloring import (ColoringVector, EdgeColoring, Shape, edge_pair, expand,
                                    orbit_edges, relabel, vector_length)
from ramsey_search.constructors import cubic, paley

from oracle import (brute_bad_edges, brute_count, brute_counts, brute_through, is_mono,
                    random_coloring, recolored)


def mono(n, c=1, r=2):
    return EdgeColoring(n, r, bytes([c] * (n * (n - 1) // 2)))


PENTAGON = expand(ColoringVector(Shape.circulant(5), 2, (1, 2)))


def test_count_examples():
    assert count_cliques(mono(6), 1, 3) == 20
    assert count_cliques(mono(6), 2, 3) == 0
    assert brute_counts(PENTAGON, (3, 3)) == (0, 0)
    assert count_all(PENTAGON, (3, 3)) == (0, 0)


def test_paley_101_has_no_mono_k6():
    assert count_cliques(paley(101), 1, 6) == 0
    assert count_cliques(paley(101), 2, 6) == 0


def test_cubic_127_is_good_for_4_12():
    assert count_all(cubic(127), (4, 12)) == (0, 0)


def test_every_two_coloring_of_k6_has_a_mono_triangle():
    for bits in range(1 << 15):
        cols = bytes(1 + ((bits >> i) & 1) for i in range(15))
        assert sum(count_all(EdgeColoring(6, 2, cols), (3, 3))) >= 1


@pytest.mark.parametrize("seed", range(10))
def test_counts_match_brute_force_k10(seed):
    col = random_coloring(10, 2, random.Random(seed))
    assert count_all(col, (3, 3)) == brute_counts(col, (3, 3))


@pytest.mark.parametrize("seed", range(25))
def test_counts_match_brute_force_mixed(seed):
    rng = random.Random(1000 + seed)
    n, r = rng.randint(3, 16), rng.randint(2, 4)
    targets = tuple(rng.randint(2, 5) for _ in range(r))
    col = random_coloring(n, r, rng)
    assert count_all(col, targets) == brute_counts(col, targets)


@pytest.mark.parametrize("seed", range(15))
def test_rotation_shortcut_matches_brute_force(seed):
    rng = random.Random(2000 + seed)
    n = rng.randint(3, 20)
    r = rng.randint(2, 3)
    v = ColoringVector(Shape.circulant(n), r, tuple(rng.randint(1, r) for _ in range(n // 2)))
    col = expand(v)
    assert col.is_rotation_invariant
    targets = tuple(rng.randint(3, 5) for _ in range(r))
    assert count_all(col, targets) == brute_counts(col, targets)


def test_bad_edge_set_examples():
    assert bad_edge_set(PENTAGON, (3, 3)) == frozenset()
    assert bad_edge_set(mono(6), (3, 3)) == frozenset(range(15))


@pytest.mark.parametrize("seed", range(10))
def test_bad_edge_set_matches_oracle(seed):
    rng = random.Random(3000 + seed)
    col = random_coloring(12, 2, rng)
    targets = (rng.randint(3, 4), rng.randint(3, 5))
    assert bad_edge_set(col, targets) == brute_bad_edges(col, targets)


def test_through_all_edges_is_full_count(rng):
    for _ in range(10):
        col = random_coloring(12, 2, rng)
        for c in (1, 2):
            for k in (2, 3, 4):
                everything = range(len(col.colors))
                assert cliques_through_edges(col, everything, c, k) == count_cliques(col, c, k)


def test_through_edge_outside_cliques_is_zero():
    # the pentagon's edges lie in no triangle of either color
    assert cliques_through_edges(PENTAGON, [(0, 1)], 1, 3) == 0
    assert cliques_through_edges(PENTAGON, [(0, 2)], 2, 3) == 0


@pytest.mark.parametrize("seed", range(30))
def test_through_edges_matches_oracle(seed):
    rng = random.Random(4000 + seed)
    n = rng.randint(4, 20)
    col = random_coloring(n, 2, rng)
    m = n * (n - 1) // 2
    E = [edge_pair(i) for i in rng.sample(range(m), rng.randint(1, min(m, 12)))]
    c, k = rng.randint(1, 2), rng.randint(2, 4)
    assert cliques_through_edges(col, E, c, k) == brute_through(col, E, c, k)


def test_recount_identity_move(rng):
    v = ColoringVector(Shape.circulant(11), 2, tuple(rng.randint(1, 2) for _ in range(5)))
    counts = count_all(expand(v), (3, 3))
    assert recount_delta(v, counts, 2, v.values[2], (3, 3)) == counts


def test_recount_destroys_single_triangle():
    # color 2 everywhere except one color-1 triangle on {0, 1, 2}
    n = 5
    cols = bytearray([2] * 10)
    for u, w in ((0, 1), (0, 2), (1, 2)):
        cols[w * (w - 1) // 2 + u] = 1
    v = ColoringVector(Shape.edges(n), 2, tuple(cols))
    counts = count_all(expand(v), (3, 6))
    assert counts == (1, 0)
    after = recount_delta(v, counts, 0, 2, (3, 6))
    assert after[0] == counts[0] - 1


def _shapes_for(n):
    out = [Shape.circulant(n), Shape.edges(n)]
    for m in range(2, n // 2 + 1):
        if n % m == 0:
            out += [Shape.blocks(n, m), Shape.blocks(n, m, True)]
    return out


@pytest.mark.parametrize("seed", range(120))
def test_recount_delta_matches_full_recount(seed):
    rng = random.Random(5000 + seed)
    n = rng.randint(4, 25)
    shape = rng.choice(_shapes_for(n))
    r = rng.randint(2, 3)
    v = ColoringVector(shape, r, tuple(rng.randint(1, r) for _ in range(vector_length(shape))))
    targets = tuple(rng.randint(3, 5) for _ in range(r))
    counts = count_all(expand(v), targets)
    i = rng.randrange(vector_length(shape))
    c_new = rng.randint(1, r)
    expected = brute_counts(recolored(expand(v), orbit_edges(shape, i), c_new), targets)
    assert recount_delta(v, counts, i, c_new, targets) == expected


def test_verify_paley_17():
    col = paley(17)
    assert brute_counts(col, (4, 4)) == (0, 0)
    assert verify(col, (4, 4)).good


def test_verify_reports_witness():
    verdict = verify(mono(6), (3, 3))
    assert not verdict.good
    assert verdict.witness_color == 1
    assert len(verdict.witness) == 3
    assert is_mono(mono(6), verdict.witness, 1)


def test_verify_cubic_127():
    assert verify(cubic(127), (4, 12)).good


def test_verify_witness_on_paley_101_k5():
    verdict = verify(paley(101), (5, 5))
    assert not verdict.good
    assert len(set(verdict.witness)) == 5
    assert is_mono(paley(101), verdict.witness, verdict.witness_color)


def _forged(n, r, colors):
    col = object.__new__(EdgeColoring)
    object.__setattr__(col, "n", n)
    object.__setattr__(col, "r", r)
    object.__setattr__(col, "colors", bytes(colors))
    return col


def test_verify_malformed_is_distinct_from_bad():
    with pytest.raises(MalformedColoring):
        verify(_forged(3, 2, [1, 2, 3]), (3, 3))
    with pytest.raises(MalformedColoring):
        verify(_forged(4, 2, [1, 2]), (3, 3))
    with pytest.raises(MalformedColoring):
        verify(PENTAGON, (3, 3, 3))
    with pytest.raises(MalformedColoring):
        verify("12", (3, 3))


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 20), st.integers(0, 2 ** 32))
def test_counts_invariant_under_relabeling(n, seed):
    rng = random.Random(seed)
    col = random_coloring(n, 2, rng)
    perm = list(range(n))
    rng.shuffle(perm)
    targets = (3, 4)
    assert count_all(relabel(col, perm), targets) == count_all(col, targets)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 14), st.integers(2, 3), st.integers(0, 2 ** 32))
def test_verdict_bad_edges_and_counts_agree(n, r, seed):
    rng = random.Random(seed)
    col = random_coloring(n, r, rng)
    targets = tuple(rng.randint(3, 5) for _ in range(r))
    good = verify(col, targets).good
    assert good == (bad_edge_set(col, targets) == frozenset()) == (not any(count_all(col, targets)))
