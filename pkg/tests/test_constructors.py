import random

import pytest

from ramsey_search.cliques import count_all, verify
from ramsey_search.coloring import (ColoringVector, EdgeColoring, Shape, edge_index, expand, orbit_edges,
                                    restrict, vector_length)
from ramsey_search.constructors import (SplitPlan, as_block_vector, circulant_canon, cubic, extend_layer,
                                        frozen_prefix, good_circulants, greedy_delete,
                                        greedy_delete_vertices, is_prime, paley, residue_circulant, split,
                                        split_sources, tile, vertex_incidence)
from ramsey_search.search import SearchConfig, random_vector

from oracle import brute_counts, color_of, mono_cliques, random_coloring


def degrees(col, c):
    return {sum(1 for u in range(col.n) if u != v and color_of(col, u, v) == c) for v in range(col.n)}


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(101) and is_prime(127) and not is_prime(121)


def test_paley_pentagon():
    assert residue_circulant(5, 2).values == (1, 2)


def test_paley_17():
    col = paley(17)
    assert degrees(col, 1) == {8}
    assert brute_counts(col, (4, 4)) == (0, 0)


def test_paley_101_regular_and_good():
    col = paley(101)
    assert degrees(col, 1) == {50}
    assert verify(col, (6, 6)).good


@pytest.mark.parametrize("p", [5, 13, 17, 29, 37])
def test_paley_self_complementary(p):
    col = paley(p)
    a = next(x for x in range(2, p) if pow(x, (p - 1) // 2, p) == p - 1)
    for v in range(1, p):
        for u in range(v):
            assert color_of(col, u, v) != color_of(col, a * u % p, a * v % p)


def test_cubic_127():
    col = cubic(127)
    assert degrees(col, 1) == {42}
    assert count_all(col, (4, 12)) == (0, 0)


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_cubic_symmetries(p):
    col = cubic(p)
    cube = next(x for x in range(2, p) if pow(x, (p - 1) // 3, p) == 1)
    for v in range(1, p):
        for u in range(v):
            c = color_of(col, u, v)
            assert c == color_of(col, (u + 1) % p, (v + 1) % p)
            assert c == color_of(col, cube * u % p, cube * v % p)


def test_residue_errors():
    for bad in (15, 19, 7):
        with pytest.raises(ValueError):
            paley(bad)
    for bad in (11, 121, 17):
        with pytest.raises(ValueError):
            cubic(bad)


def test_tile_single_copy_is_identity():
    base = residue_circulant(17, 2)
    assert tile(base, 1, 17) == base


def test_tile_full_blocks():
    base = residue_circulant(13, 2)
    for sym in (False, True):
        v = tile(base, 3, 39, sym=sym)
        assert v.shape == Shape.blocks(39, 3, sym)
        col = expand(v)
        for a in range(39):
            for b in range(a + 1, 39):
                dist = (b - a) % 13
                expected = 2 if dist == 0 else base.values[min(dist, 13 - dist) - 1]
                assert color_of(col, a, b) == expected


def test_tile_paley_101_cut_to_134():
    base = residue_circulant(101, 2)
    v = tile(base, 2, 134)
    assert v.shape == Shape.edges(134)
    col = expand(v)
    assert restrict(col, range(101)) == paley(101)
    assert color_of(col, 3, 104) == 2


def test_tile_errors():
    base = residue_circulant(5, 2)
    with pytest.raises(ValueError):
        tile(base, 2, 11)
    with pytest.raises(ValueError):
        tile(ColoringVector(Shape.edges(5), 2, (1,) * 10), 2, 10)


@pytest.mark.parametrize("sym", [False, True])
def test_as_block_vector_roundtrip(sym, rng):
    shape = Shape.blocks(24, 4, sym)
    v = random_vector(shape, 3, rng)
    assert as_block_vector(expand(v), 6, sym) == v
    assert as_block_vector(random_coloring(24, 3, rng), 6, sym) is None


def test_extend_layer_undone_by_deletion(rng):
    v = random_vector(Shape.blocks(20, 4), 2, rng)
    col = expand(v)
    ext, frozen = extend_layer(col, 5, rng)
    assert ext.shape == Shape.blocks(25, 5)
    assert restrict(expand(ext), range(20)) == col
    assert frozen == frozen_prefix(ext.shape, 20)
    for i in frozen:
        assert all(b < 20 for _, b in orbit_edges(ext.shape, i))


def test_extend_layer_from_circle_coloring(rng):
    col = paley(13)
    ext, frozen = extend_layer(col, 13, rng, sym=True)
    assert ext.shape == Shape.blocks(26, 2, True)
    assert restrict(expand(ext), range(13)) == col
    assert len(frozen) == 6


def test_extend_chain_60_to_105(rng):
    v = random_vector(Shape.blocks(60, 4), 2, rng)
    col = expand(v)
    for m in (5, 6, 7):
        ext, frozen = extend_layer(col, 15, rng)
        assert ext.shape == Shape.blocks(15 * m, m)
        assert restrict(expand(ext), range(col.n)) == col
        assert frozen == frozen_prefix(ext.shape, col.n)
        col = expand(ext)
    assert col.n == 105


def test_extend_layer_fallback_freezes_old_edges(rng):
    col = random_coloring(9, 2, rng)
    ext, frozen = extend_layer(col, 4, rng)
    assert ext.shape == Shape.edges(13)
    assert frozen == frozenset(range(36))
    assert restrict(expand(ext), range(9)) == col


def _one_triangle():
    vals = [2] * 15
    for u, v in ((1, 3), (1, 4), (3, 4)):
        vals[edge_index(u, v)] = 1
    return EdgeColoring(6, 2, bytes(vals))


def test_greedy_delete_unique_bad_clique():
    col = _one_triangle()
    assert vertex_incidence(col, (3, 7)) == [0, 1, 0, 1, 1, 0]
    out, removed = greedy_delete_vertices(col, (3, 7), 1)
    assert removed == [1]
    assert verify(out, (3, 7)).good
    assert greedy_delete(col, (3, 7), 0) == col


@pytest.mark.parametrize("seed", range(8))
def test_vertex_incidence_matches_brute_force(seed):
    rng = random.Random(7000 + seed)
    col = random_coloring(rng.randint(5, 12), 2, rng)
    targets = (3, rng.randint(3, 4))
    expected = [0] * col.n
    for c, k in enumerate(targets, 1):
        for s in mono_cliques(col, c, k):
            for x in s:
                expected[x] += 1
    assert vertex_incidence(col, targets) == expected


def test_greedy_delete_never_increases_counts(rng):
    col = random_coloring(14, 2, rng)
    before = sum(brute_counts(col, (3, 4)))
    out = greedy_delete(col, (3, 4), 3)
    assert out.n == 11
    assert sum(brute_counts(out, (3, 4))) <= before
    with pytest.raises(ValueError):
        greedy_delete(col, (3, 4), 13)


def test_good_circulants_k13():
    found = good_circulants(13, (3, 5))
    assert [v.values for v in found] == [(1, 2, 2, 2, 1, 2)]


def test_good_circulants_k17_and_canon():
    found = good_circulants(17, (4, 4))
    assert found
    assert all(brute_counts(expand(v), (4, 4)) == (0, 0) for v in found)
    paley17 = residue_circulant(17, 2).values
    assert circulant_canon(17, paley17) in {v.values for v in found}
    assert good_circulants(18, (4, 4)) == []


def test_split_plan_targets():
    assert SplitPlan(2, (3, 3), (3, 5)).targets == (3, 3, 3)
    assert SplitPlan(2, (3, 4), (3, 5)).targets == (3, 4, 3)
    assert SplitPlan(1, (3, 4), (5, 3, 6)).targets == (3, 4, 3, 6)
    with pytest.raises(ValueError):
        SplitPlan(1, (4, 4), (5, 5))


def _check_split_respects_classes(col, res, plan):
    out = expand(res.vector)
    for e, c in enumerate(col.colors):
        if c == plan.g:
            assert out.colors[e] in (1, 2)
        else:
            assert out.colors[e] == plan.new_color(c)


def test_split_k13_stage_one():
    (src,) = good_circulants(13, (3, 5))
    col = expand(src)
    res = split(col, 2, (3, 3), (3, 5), SearchConfig(seed=0))
    assert res.good and res.stage == 1
    assert brute_counts(expand(res.vector), (3, 3, 3)) == (0, 0, 0)
    _check_split_respects_classes(col, res, SplitPlan(2, (3, 3), (3, 5)))


@pytest.mark.parametrize("seed", range(3))
def test_split_stage_two_only_touches_class_g(seed):
    col = expand(good_circulants(13, (3, 5))[0])
    res = split(col, 2, (3, 3), (3, 5), SearchConfig(seed=seed, max_iters=20_000), stages=(2,))
    assert res.stage == 2
    _check_split_respects_classes(col, res, SplitPlan(2, (3, 3), (3, 5)))
    assert res.counts == brute_counts(expand(res.vector), (3, 3, 3))


def test_split_rejects_bad_source():
    with pytest.raises(ValueError):
        split(paley(17), 1, (3, 3), (3, 4), SearchConfig())


def test_split_sources_returns_first_good():
    sources = good_circulants(13, (3, 5))
    good, attempts = split_sources(sources, 2, (3, 3), (3, 5), SearchConfig(seed=1))
    assert good is not None and good.good
    assert attempts[-1] is good
