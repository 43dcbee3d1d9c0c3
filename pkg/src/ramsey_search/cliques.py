"""Exact monochromatic clique counting on per-color bitset adjacency.

Each color class is held as a list of Python ints, one bit row per vertex.
Counting is a candidate-set intersection recursion with two cuts: a branch
is abandoned when it has fewer candidates than remaining depth, or when a
greedy coloring of the candidates uses fewer classes than remaining depth.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .coloring import (ColoringVector, EdgeColoring, expand, orbit_indices,
                       edge_index, edge_pair)

# below this depth the coloring bound costs more than it saves
_BOUND_DEPTH = 4


class MalformedColoring(ValueError):
    """The coloring itself is invalid (as opposed to merely bad)."""


def color_rows(col: EdgeColoring, c: int) -> list[int]:
    adj = [0] * col.n
    cols = col.colors
    for v in range(1, col.n):
        base = v * (v - 1) // 2
        row = 0
        for u in range(v):
            if cols[base + u] == c:
                row |= 1 << u
                adj[u] |= 1 << v
        adj[v] |= row
    return adj


def all_rows(col: EdgeColoring) -> list[list[int]]:
    """Bit rows for colors 1..r; index 0 is unused."""
    rows = [[0] * col.n for _ in range(col.r + 1)]
    cols = col.colors
    for v in range(1, col.n):
        base = v * (v - 1) // 2
        bv = 1 << v
        for u in range(v):
            c = cols[base + u]
            rows[c][u] |= bv
            rows[c][v] |= 1 << u
    return rows


def _enough_colors(P: int, adj: Sequence[int], k: int) -> bool:
    """True if greedy coloring of P needs at least k classes."""
    classes = 0
    while P:
        classes += 1
        if classes >= k:
            return True
        Q = P
        while Q:
            low = Q & -Q
            P ^= low
            Q &= ~adj[low.bit_length() - 1]
            Q &= ~low
    return False


def count_in(adj: Sequence[int], P: int, k: int) -> int:
    """Number of k-cliques of ``adj`` whose vertices all lie in P."""
    if k <= 0:
        return 1
    if k == 1:
        return P.bit_count()
    if P.bit_count() < k:
        return 0
    if k == 2:
        total = 0
        while P:
            low = P & -P
            P ^= low
            total += (adj[low.bit_length() - 1] & P).bit_count()
        return total
    if k >= _BOUND_DEPTH and not _enough_colors(P, adj, k):
        return 0
    total = 0
    while P.bit_count() >= k:
        low = P & -P
        P ^= low
        total += count_in(adj, adj[low.bit_length() - 1] & P, k - 1)
    return total


def find_in(adj: Sequence[int], P: int, k: int) -> list[int] | None:
    """Vertices of one k-clique inside P, or None."""
    if k <= 0:
        return []
    if P.bit_count() < k:
        return None
    if k >= _BOUND_DEPTH and not _enough_colors(P, adj, k):
        return None
    while P.bit_count() >= k:
        low = P & -P
        P ^= low
        v = low.bit_length() - 1
        rest = find_in(adj, adj[v] & P, k - 1)
        if rest is not None:
            return [v] + rest
    return None


def _count_rows(adj: Sequence[int], n: int, k: int, rotational: bool) -> int:
    if k <= 1:
        return n if k == 1 else 1
    if rotational and n > 2:
        # every vertex lies in the same number of cliques
        through_zero = count_in(adj, adj[0], k - 1)
        return n * through_zero // k
    return count_in(adj, (1 << n) - 1, k)


def count_cliques(col: EdgeColoring, c: int, k: int) -> int:
    return _count_rows(color_rows(col, c), col.n, k, col.is_rotation_invariant)


def count_all(col: EdgeColoring, targets: Sequence[int]) -> tuple[int, ...]:
    _check_targets(col, targets)
    rows = all_rows(col)
    rot = col.is_rotation_invariant
    return tuple(_count_rows(rows[c], col.n, k, rot) for c, k in enumerate(targets, 1))


def _check_targets(col: EdgeColoring, targets: Sequence[int]):
    if len(targets) != col.r:
        raise ValueError(f"{len(targets)} targets given for a {col.r}-coloring")


def edge_in_clique(adj: Sequence[int], u: int, v: int, k: int) -> bool:
    return find_in(adj, adj[u] & adj[v], k - 2) is not None


def bad_edge_set(col: EdgeColoring, targets: Sequence[int]) -> frozenset[int]:
    _check_targets(col, targets)
    rows = all_rows(col)
    bad = set()
    for c, k in enumerate(targets, 1):
        adj = rows[c]
        seen = set()
        for v in range(1, col.n):
            # whole cliques get marked at once, so most edges are settled cheaply
            P = adj[v] & ((1 << v) - 1)
            while P:
                low = P & -P
                P ^= low
                u = low.bit_length() - 1
                e = edge_index(u, v)
                if e in seen:
                    continue
                clique = find_in(adj, adj[u] & adj[v], k - 2)
                if clique is None:
                    continue
                members = [u, v] + clique
                for a in range(len(members)):
                    for b in range(a + 1, len(members)):
                        seen.add(edge_index(members[a], members[b]))
        bad |= seen
    return frozenset(bad)


def cliques_through_rows(adj: list[int], E: Iterable[tuple[int, int]], k: int) -> int:
    """Cliques of ``adj`` containing at least one edge of E, each counted once.

    Edges of E are visited in increasing index order and removed after being
    visited, so every clique is attributed to its lowest-index member of E.
    ``adj`` is modified in place and restored before returning.
    """
    removed = []
    total = 0
    for u, v in E:
        if not (adj[u] >> v) & 1:
            continue
        total += count_in(adj, adj[u] & adj[v], k - 2)
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
        removed.append((u, v))
    for u, v in removed:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return total


def cliques_through_edges(col: EdgeColoring, E: Iterable[int | tuple[int, int]], c: int, k: int) -> int:
    idx = sorted({e if isinstance(e, int) else edge_index(*e) for e in E})
    if k < 2:
        raise ValueError("cliques through an edge need k >= 2")
    return cliques_through_rows(color_rows(col, c), [edge_pair(e) for e in idx], k)


class IncrementalCounts:
    """Per-color bit rows and clique counts kept in sync with a coloring vector.

    ``delta`` prices a component recoloring by enumerating only cliques that
    pass through the component's orbit; ``apply`` commits it.
    """

    def __init__(self, v: ColoringVector, targets: Sequence[int], counts: Sequence[int] | None = None):
        if len(targets) != v.r:
            raise ValueError(f"{len(targets)} targets given for a {v.r}-coloring")
        self.shape = v.shape
        self.r = v.r
        self.targets = tuple(targets)
        self.values = list(v.values)
        col = expand(v)
        self.rows = all_rows(col)
        self.orbits = [[edge_pair(e) for e in orb] for orb in orbit_indices(v.shape)]
        if counts is None:
            counts = count_all(col, self.targets)
        self.counts = list(counts)

    def vector(self) -> ColoringVector:
        return ColoringVector(self.shape, self.r, tuple(self.values))

    def loss(self, i: int) -> int:
        """Cliques destroyed by moving component i off its current color."""
        c = self.values[i]
        return cliques_through_rows(self.rows[c], self.orbits[i], self.targets[c - 1])

    def gain(self, i: int, c_new: int) -> int:
        """Cliques created in color c_new by moving component i onto it."""
        adj = self.rows[c_new]
        orb = self.orbits[i]
        for u, v in orb:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        try:
            return cliques_through_rows(adj, orb, self.targets[c_new - 1])
        finally:
            for u, v in orb:
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)

    def delta(self, i: int, c_new: int, loss: int | None = None) -> tuple[int, int]:
        """(decrease in f_old, increase in f_new) for recoloring component i."""
        if c_new == self.values[i]:
            return 0, 0
        if loss is None:
            loss = self.loss(i)
        return loss, self.gain(i, c_new)

    def counts_after(self, i: int, c_new: int) -> tuple[int, ...]:
        c_old = self.values[i]
        lost, gained = self.delta(i, c_new)
        out = list(self.counts)
        if c_new != c_old:
            out[c_old - 1] -= lost
            out[c_new - 1] += gained
        return tuple(out)

    def apply(self, i: int, c_new: int, change: tuple[int, int] | None = None):
        c_old = self.values[i]
        if c_new == c_old:
            return
        lost, gained = change if change is not None else self.delta(i, c_new)
        old, new = self.rows[c_old], self.rows[c_new]
        for u, v in self.orbits[i]:
            old[u] &= ~(1 << v)
            old[v] &= ~(1 << u)
            new[u] |= 1 << v
            new[v] |= 1 << u
        self.values[i] = c_new
        self.counts[c_old - 1] -= lost
        self.counts[c_new - 1] += gained

    def in_bad_clique(self, i: int) -> bool:
        c = self.values[i]
        k = self.targets[c - 1]
        adj = self.rows[c]
        return any(edge_in_clique(adj, u, v, k) for u, v in self.orbits[i])


def recount_delta(v: ColoringVector, counts: Sequence[int], i: int, c_new: int,
                  targets: Sequence[int]) -> tuple[int, ...]:
    return IncrementalCounts(v, targets, counts).counts_after(i, c_new)


@dataclass(frozen=True)
class Verdict:
    good: bool
    counts: tuple[int, ...]
    witness: tuple[int, ...] | None = None
    witness_color: int | None = None

    def __bool__(self):
        return self.good


def verify(col, targets: Sequence[int]) -> Verdict:
    """Check a coloring against per-color clique bounds from scratch.

    Raises :class:`MalformedColoring` for structurally invalid input; a bad
    but well-formed coloring yields a verdict carrying one explicit witness.
    """
    if isinstance(col, ColoringVector):
        col = expand(col)
    if not isinstance(col, EdgeColoring):
        raise MalformedColoring(f"not a coloring: {type(col).__name__}")
    n, r = col.n, col.r
    if len(col.colors) != n * (n - 1) // 2:
        raise MalformedColoring("edge list has the wrong length")
    bad = [x for x in col.colors if not 1 <= x <= r]
    if bad:
        raise MalformedColoring(f"edge color {bad[0]} outside 1..{r}")
    if len(targets) != r:
        raise MalformedColoring(f"{len(targets)} targets given for a {r}-coloring")
    counts = count_all(col, targets)
    if not any(counts):
        return Verdict(True, counts)
    rows = all_rows(col)
    for c, k in enumerate(targets, 1):
        if counts[c - 1]:
            clique = find_in(rows[c], (1 << n) - 1, k)
            return Verdict(False, counts, tuple(clique), c)
    raise AssertionError("nonzero count without a clique")
