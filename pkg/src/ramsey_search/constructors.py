"""Seed colorings and derived constructions.

Residue colorings of Z_p (quadratic and cubic), tiling a circle coloring
into blocks, appending a circulant block layer, greedy deletion of problem
vertices, and splitting one color class into two.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, replace
from typing import Sequence

from .cliques import all_rows, count_all, count_in, verify
from .coloring import (CIRCULANT, ColoringVector, EdgeColoring, Shape,
                       as_free, block_components, block_order, edge_index, expand,
                       orbit_indices, restrict, vector_length)
from .search import SearchConfig, SearchResult, anneal_search, random_vector, tabu_search


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for x in range(3, math.isqrt(p) + 1, 2):
        if p % x == 0:
            return False
    return True


def residue_circulant(p: int, e: int) -> ColoringVector:
    """Circle coloring of K_p: distance x gets color 1 iff x is a nonzero e-th power mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (p - 1) % e:
        raise ValueError(f"p = {p} is not 1 mod {e}")
    if p > 2 and (p - 1) // e % 2:
        # -1 must be an e-th power residue for the coloring to be symmetric
        raise ValueError(f"-1 is not an {e}-th power residue mod {p}")
    q = (p - 1) // e
    vals = tuple(1 if pow(x, q, p) == 1 else 2 for x in range(1, p // 2 + 1))
    return ColoringVector(Shape.circulant(p), 2, vals)


def paley(p: int) -> EdgeColoring:
    """Quadratic residue coloring of K_p, p prime with p = 1 mod 4."""
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"Paley coloring needs a prime p = 1 mod 4, got {p}")
    return expand(residue_circulant(p, 2))


def cubic(p: int) -> EdgeColoring:
    """Cubic residue coloring of K_p, p prime with p = 1 mod 3."""
    if not is_prime(p) or p % 3 != 1:
        raise ValueError(f"cubic coloring needs a prime p = 1 mod 3, got {p}")
    return expand(residue_circulant(p, 3))


def tile(base: ColoringVector, m: int, n_target: int, clone_color: int | None = None,
         sym: bool = True) -> ColoringVector:
    """Block coloring on m copies of a circle coloring, cut down to n_target vertices.

    Every block, diagonal or not, repeats the base distance classes. The
    offset-0 edges joining the copies of one vertex have no distance and get
    ``clone_color`` (default: the last color). When n_target < m*b the
    highest-numbered vertices are dropped and a free-edge vector is returned.
    """
    if base.shape.kind != CIRCULANT:
        raise ValueError("tile needs a circle coloring as its base")
    b = base.shape.n
    if m < 1:
        raise ValueError("m must be positive")
    if n_target > m * b:
        raise ValueError(f"cannot cut {m}x{b} vertices down to {n_target}")
    if n_target < 2:
        raise ValueError("n_target must be at least 2")
    clone = base.r if clone_color is None else clone_color
    if m == 1:
        tiled = base
    else:
        shape = Shape.blocks(m * b, m, sym)
        vals = []
        for p, q in block_order(m):
            if p == q:
                vals.extend(base.values)
            elif sym:
                vals.append(clone)
                vals.extend(base.values[t - 1] for t in range(1, b // 2 + 1))
            else:
                vals.append(clone)
                vals.extend(base.values[min(t, b - t) - 1] for t in range(1, b))
        tiled = ColoringVector(shape, base.r, tuple(vals))
    if n_target == m * b:
        return tiled
    return as_free(restrict(expand(tiled), range(n_target)))


def as_block_vector(col: EdgeColoring, d: int, sym: bool = False) -> ColoringVector | None:
    """Read col as an m x m array of d x d circulant blocks, if it is one."""
    n = col.n
    if d < 2 or n % d:
        return None
    m = n // d
    shape = Shape.circulant(n) if m == 1 else Shape.blocks(n, m, sym)
    vals = [0] * vector_length(shape)
    if m == 1:
        comps = {(0, 0): range(len(vals))}
    else:
        comps = {(p, q): block_components(shape, p, q) for p, q in block_order(m)}
    for (p, q), rng_ in comps.items():
        for j in range(d):
            for t in range(d):
                a, b = p * d + j, q * d + (j + t) % d
                if a == b:
                    continue
                if p == q:
                    slot = min(t, d - t) - 1
                elif sym:
                    slot = min(t, d - t)
                else:
                    slot = t
                c = col.colors[edge_index(a, b)]
                i = rng_[slot]
                if vals[i] == 0:
                    vals[i] = c
                elif vals[i] != c:
                    return None
    return ColoringVector(shape, col.r, tuple(vals))


def extend_layer(col: EdgeColoring, d: int, rng: random.Random,
                 sym: bool = False) -> tuple[ColoringVector, frozenset[int]]:
    """Append d new vertices as one more row of circulant blocks.

    Returns the extended vector and the set of components covering the old
    edges, which callers freeze. If col is not itself made of d x d circulant
    blocks, the result is a free-edge vector whose old edges are frozen.
    """
    if d < 2:
        raise ValueError("layer size d must be at least 2")
    n = col.n
    old = as_block_vector(col, d, sym)
    if old is not None:
        m = n // d + 1
        shape = Shape.blocks(n + d, m, sym)
        vals = [0] * vector_length(shape)
        frozen = set()
        for p, q in block_order(m):
            comps = block_components(shape, p, q)
            if q < m - 1:
                if m - 1 == 1:
                    src = range(len(old.values))
                else:
                    src = block_components(old.shape, p, q)
                for i, s in zip(comps, src):
                    vals[i] = old.values[s]
                    frozen.add(i)
            else:
                for i in comps:
                    vals[i] = rng.randint(1, col.r)
        return ColoringVector(shape, col.r, tuple(vals)), frozenset(frozen)
    N = n + d
    vals = [0] * (N * (N - 1) // 2)
    frozen = set()
    for v in range(1, N):
        for u in range(v):
            e = edge_index(u, v)
            if v < n:
                vals[e] = col.colors[e]
                frozen.add(e)
            else:
                vals[e] = rng.randint(1, col.r)
    return ColoringVector(Shape.edges(N), col.r, tuple(vals)), frozenset(frozen)


def frozen_prefix(shape: Shape, n_old: int) -> frozenset[int]:
    """Components whose whole orbit lies on the first n_old vertices."""
    out = set()
    for i, orb in enumerate(orbit_indices(shape)):
        top = orb[-1]
        # edge_index is increasing in the larger endpoint
        if top < n_old * (n_old - 1) // 2:
            out.add(i)
    return frozenset(out)


def vertex_incidence(col: EdgeColoring, targets: Sequence[int]) -> list[int]:
    """Number of bad subgraphs (all colors) containing each vertex."""
    rows = all_rows(col)
    inc = [0] * col.n
    for c, k in enumerate(targets, 1):
        adj = rows[c]
        for v in range(col.n):
            inc[v] += count_in(adj, adj[v], k - 1)
    return inc


def greedy_delete(col: EdgeColoring, targets: Sequence[int], count: int) -> EdgeColoring:
    """Repeatedly drop the vertex in the most bad subgraphs (lowest index on ties)."""
    return greedy_delete_vertices(col, targets, count)[0]


def greedy_delete_vertices(col: EdgeColoring, targets: Sequence[int],
                           count: int) -> tuple[EdgeColoring, list[int]]:
    if not 0 <= count < col.n - 1:
        raise ValueError("must keep at least two vertices")
    labels = list(range(col.n))
    removed = []
    for _ in range(count):
        inc = vertex_incidence(col, targets)
        v = max(range(col.n), key=lambda x: (inc[x], -x))
        removed.append(labels.pop(v))
        col = restrict(col, [x for x in range(col.n) if x != v])
    return col, removed


def circulant_canon(n: int, values: Sequence[int]) -> tuple[int, ...]:
    """Smallest image of a circle coloring under the multipliers x -> a*x mod n."""
    best = None
    for a in range(1, n):
        if math.gcd(a, n) != 1:
            continue
        img = [0] * len(values)
        for dist in range(1, n // 2 + 1):
            y = a * dist % n
            img[min(y, n - y) - 1] = values[dist - 1]
        img = tuple(img)
        if best is None or img < best:
            best = img
    return best


def good_circulants(n: int, targets: Sequence[int], r: int | None = None,
                    limit: int | None = None) -> list[ColoringVector]:
    """Good circle colorings of K_n, one per class under multiplier maps.

    Exhaustive over r ** (n // 2) vectors, so only meant for small n.
    """
    r = r or len(targets)
    shape = Shape.circulant(n)
    seen = set()
    out = []
    for vals in itertools.product(range(1, r + 1), repeat=n // 2):
        canon = circulant_canon(n, vals)
        if canon in seen:
            continue
        seen.add(canon)
        v = ColoringVector(shape, r, canon)
        if not any(count_all(expand(v), targets)):
            out.append(v)
            if limit is not None and len(out) >= limit:
                break
    return out


SPLIT_PAIRS = ((3, 3), (3, 4))


@dataclass
class SplitPlan:
    g: int
    into: tuple[int, int]
    source_targets: tuple[int, ...]

    def __post_init__(self):
        self.into = tuple(self.into)
        if self.into not in SPLIT_PAIRS:
            raise ValueError(f"split target pair must be one of {SPLIT_PAIRS}")
        if not 1 <= self.g <= len(self.source_targets):
            raise ValueError(f"color {self.g} out of range")

    @property
    def targets(self) -> tuple[int, ...]:
        others = [k for c, k in enumerate(self.source_targets, 1) if c != self.g]
        return (*self.into, *others)

    def new_color(self, c: int) -> int:
        """Position of old color c (c != g) in the split coloring."""
        return 3 + sum(1 for x in range(1, c) if x != self.g)

    def lift(self, col: EdgeColoring, part: dict[int, int]) -> EdgeColoring:
        """Split coloring where old-class-g edge e takes color part[e] in {1, 2}."""
        r = len(self.source_targets) + 1
        mapping = {c: self.new_color(c) for c in range(1, r) if c != self.g}
        out = bytearray(len(col.colors))
        for e, c in enumerate(col.colors):
            out[e] = part[e] if c == self.g else mapping[c]
        return EdgeColoring(col.n, r, bytes(out))


def _stage_cfg(cfg: SearchConfig, stage: int, frozen=frozenset()) -> SearchConfig:
    return replace(cfg, seed=(cfg.seed + 7919 * stage) % 2 ** 64, frozen=frozenset(frozen))


def split(col: EdgeColoring, g: int, into: Sequence[int], targets: Sequence[int],
          cfg: SearchConfig, exhaustive_limit: int = 16, stage3_max_bad: int = 50,
          stages: Sequence[int] = (1, 2, 3)) -> SearchResult:
    """Split color class g of a good coloring into two classes bounded by ``into``.

    Stage 1 assigns whole distance classes (circle colorings only), stage 2
    recolors single edges of class g only, and stage 3, tried only when at
    most ``stage3_max_bad`` bad subgraphs remain, lets every edge change.
    The result carries the stage that produced it in ``stage``.
    """
    plan = SplitPlan(g, tuple(into), tuple(targets))
    src = verify(col, targets)
    if not src.good:
        raise ValueError(f"source coloring is not good for {tuple(targets)}: {src.counts}")
    new_targets = plan.targets
    r = col.r + 1
    n = col.n
    g_edges = [e for e, c in enumerate(col.colors) if c == g]
    best: SearchResult | None = None

    def better(res):
        return best is None or res.total < best.total

    if 1 in stages and col.is_rotation_invariant and g_edges:
        res = _split_circulant(col, plan, cfg, exhaustive_limit)
        res.stage = 1
        if res.good:
            return res
        best = res

    if 2 in stages and g_edges:
        rng = random.Random(_stage_cfg(cfg, 2).seed)
        if best is not None:
            start = as_free(expand(best.vector))
        else:
            start = as_free(plan.lift(col, {e: rng.randint(1, 2) for e in g_edges}))
        gset = set(g_edges)
        frozen = [e for e in range(len(col.colors)) if e not in gset]
        allowed = [(1, 2) if e in gset else (start.values[e],) for e in range(len(col.colors))]
        res = anneal_search(start, new_targets, _stage_cfg(cfg, 2, frozen), allowed=allowed)
        res.stage = 2
        if res.good:
            return res
        if better(res):
            best = res

    if 3 in stages and (best is None or best.total <= stage3_max_bad):
        if best is not None:
            start = as_free(expand(best.vector))
        else:
            rng = random.Random(_stage_cfg(cfg, 3).seed)
            start = as_free(plan.lift(col, {e: rng.randint(1, 2) for e in g_edges}))
        res = anneal_search(start, new_targets, _stage_cfg(cfg, 3))
        res.stage = 3
        if res.good or better(res):
            best = res
    if best is None:
        raise ValueError("no split stage was applicable")
    return best


def _split_circulant(col: EdgeColoring, plan: SplitPlan, cfg: SearchConfig,
                     exhaustive_limit: int) -> SearchResult:
    n = col.n
    shape = Shape.circulant(n)
    base = [col.colors[edge_index(0, dist)] for dist in range(1, n // 2 + 1)]
    classes = [i for i, c in enumerate(base) if c == plan.g]
    fixed = [plan.new_color(c) if c != plan.g else 1 for c in base]
    r = col.r + 1
    targets = plan.targets
    if len(classes) <= exhaustive_limit:
        best_v, best_counts = None, None
        tried = 0
        # with equal bounds the two new classes are interchangeable
        first_free = 1 if plan.into[0] == plan.into[1] else 0
        for bits in itertools.product((1, 2), repeat=len(classes) - first_free):
            vals = list(fixed)
            assignment = (1,) * first_free + bits
            for i, a in zip(classes, assignment):
                vals[i] = a
            v = ColoringVector(shape, r, tuple(vals))
            counts = count_all(expand(v), targets)
            tried += 1
            if best_counts is None or sum(counts) < sum(best_counts):
                best_v, best_counts = v, counts
                if not any(counts):
                    break
        good = not any(best_counts)
        return SearchResult(best_v, tuple(best_counts), good, [], tried, 0, cfg.seed, targets)
    allowed = [(1, 2) if i in classes else (fixed[i],) for i in range(len(base))]
    cset = set(classes)
    frozen = [i for i in range(len(base)) if i not in cset]
    rng = random.Random(_stage_cfg(cfg, 1).seed)
    start = ColoringVector(shape, r, tuple(rng.randint(1, 2) if i in cset else fixed[i]
                                           for i in range(len(base))))
    return tabu_search(shape, r, targets, _stage_cfg(cfg, 1, frozen), initial=start, allowed=allowed)


def split_sources(sources: Sequence[EdgeColoring | ColoringVector], g: int, into: Sequence[int],
                  targets: Sequence[int], cfg: SearchConfig, **kw) -> tuple[SearchResult | None, list[SearchResult]]:
    """Try split on each source in turn; returns (first good result, all attempts)."""
    attempts = []
    for src in sources:
        col = expand(src) if isinstance(src, ColoringVector) else src
        res = split(col, g, into, targets, cfg, **kw)
        attempts.append(res)
        if res.good:
            return res, attempts
    return None, attempts
