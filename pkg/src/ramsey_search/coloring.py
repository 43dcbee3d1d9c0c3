"""Coloring shapes, component orbits and explicit edge colorings of K_n.

A coloring of K_n is stored as one color per unordered pair {u, v} with
u < v, at flat position ``edge_index(u, v) = v*(v-1)//2 + u``. Colors are
1-based digits 1..9.

A :class:`ColoringVector` is a compressed description: each component owns
an orbit of edges under the shape's symmetry (distance classes for circle
colorings, per-block distance/offset classes for block-circulant colorings,
single edges for free colorings).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Sequence

MAX_COLORS = 9

CIRCULANT = "circulant"
BLOCKS = "blocks"
EDGES = "edges"


def edge_index(u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def edge_pair(idx: int) -> tuple[int, int]:
    """Inverse of :func:`edge_index`."""
    v = int(((8 * idx + 1) ** 0.5 + 1) / 2)
    while v * (v - 1) // 2 > idx:
        v -= 1
    while (v + 1) * v // 2 <= idx:
        v += 1
    return idx - v * (v - 1) // 2, v


@dataclass(frozen=True)
class Shape:
    kind: str
    n: int
    m: int = 1
    sym: bool = False

    def __post_init__(self):
        if self.kind not in (CIRCULANT, BLOCKS, EDGES):
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.kind == BLOCKS:
            if self.m < 2 or self.n % self.m or self.n // self.m < 2:
                raise ValueError(
                    f"block shape needs n = m*d with m >= 2, d >= 2 (got n={self.n}, m={self.m})")
        elif self.m != 1 or self.sym:
            raise ValueError(f"m/sym only apply to block shapes")

    @classmethod
    def circulant(cls, n: int) -> "Shape":
        return cls(CIRCULANT, n)

    @classmethod
    def blocks(cls, n: int, m: int, sym: bool = False) -> "Shape":
        return cls(BLOCKS, n, m, sym)

    @classmethod
    def edges(cls, n: int) -> "Shape":
        return cls(EDGES, n)

    @property
    def d(self) -> int:
        return self.n // self.m

    def __str__(self):
        if self.kind == BLOCKS:
            return f"blocks(n={self.n}, m={self.m}, d={self.d}{', sym' if self.sym else ''})"
        return f"{self.kind}({self.n})"


def block_order(m: int) -> list[tuple[int, int]]:
    """Blocks (p, q), p <= q, in row-major upper-triangular order."""
    return [(p, q) for p in range(m) for q in range(p, m)]


def block_width(shape: Shape, p: int, q: int) -> int:
    """Number of components owned by block (p, q)."""
    d = shape.d
    if p == q:
        return d // 2
    return d // 2 + 1 if shape.sym else d


def vector_length(shape: Shape) -> int:
    n = shape.n
    if shape.kind == CIRCULANT:
        return n // 2
    if shape.kind == EDGES:
        return comb(n, 2)
    m, d = shape.m, shape.d
    if shape.sym:
        return m * (d // 2) + comb(m, 2) * (d // 2 + 1)
    return m * (d // 2) + comb(m, 2) * d


def _block_orbit(d: int, p: int, q: int, t: int, sym: bool) -> list[tuple[int, int]]:
    if p == q:
        offsets = [t]
    elif sym:
        offsets = [t, -t]
    else:
        offsets = [t]
    seen = set()
    out = []
    for j in range(d):
        for s in offsets:
            a, b = p * d + j, q * d + (j + s) % d
            e = (a, b) if a < b else (b, a)
            if e not in seen:
                seen.add(e)
                out.append(e)
    return out


@lru_cache(maxsize=64)
def orbits(shape: Shape) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Edge orbit of every component, in component order."""
    n = shape.n
    if shape.kind == CIRCULANT:
        out = []
        for dist in range(1, n // 2 + 1):
            es = {tuple(sorted((u, (u + dist) % n))) for u in range(n)}
            out.append(tuple(sorted(es)))
        return tuple(out)
    if shape.kind == EDGES:
        return tuple((edge_pair(i),) for i in range(comb(n, 2)))
    d = shape.d
    out = []
    for p, q in block_order(shape.m):
        if p == q:
            ts = range(1, d // 2 + 1)
        elif shape.sym:
            ts = range(0, d // 2 + 1)
        else:
            ts = range(d)
        for t in ts:
            out.append(tuple(_block_orbit(d, p, q, t, shape.sym)))
    return tuple(out)


@lru_cache(maxsize=64)
def orbit_indices(shape: Shape) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(edge_index(u, v) for u, v in orb)) for orb in orbits(shape))


@lru_cache(maxsize=64)
def component_of_edge(shape: Shape) -> tuple[int, ...]:
    """Map from flat edge index to owning component."""
    owner = [-1] * comb(shape.n, 2)
    for i, orb in enumerate(orbit_indices(shape)):
        for e in orb:
            owner[e] = i
    return tuple(owner)


def orbit_edges(shape: Shape, i: int) -> list[tuple[int, int]]:
    length = vector_length(shape)
    if not 0 <= i < length:
        raise IndexError(f"component {i} out of range for {shape} (length {length})")
    return list(orbits(shape)[i])


@dataclass(frozen=True)
class EdgeColoring:
    n: int
    r: int
    colors: bytes

    def __post_init__(self):
        if not 2 <= self.r <= MAX_COLORS:
            raise ValueError(f"r must be in 2..{MAX_COLORS}")
        if len(self.colors) != comb(self.n, 2):
            raise ValueError(f"expected {comb(self.n, 2)} edge colors, got {len(self.colors)}")
        if self.colors and (min(self.colors) < 1 or max(self.colors) > self.r):
            raise ValueError(f"edge colors must lie in 1..{self.r}")

    @classmethod
    def from_function(cls, n: int, r: int, fn) -> "EdgeColoring":
        colors = bytearray(comb(n, 2))
        for v in range(1, n):
            base = v * (v - 1) // 2
            for u in range(v):
                colors[base + u] = fn(u, v)
        return cls(n, r, bytes(colors))

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("no edge from a vertex to itself")
        return self.colors[edge_index(u, v)]

    def matrix(self) -> list[list[int]]:
        """Dense symmetric color matrix with zeros on the diagonal."""
        a = [[0] * self.n for _ in range(self.n)]
        for v in range(1, self.n):
            for u in range(v):
                a[u][v] = a[v][u] = self.colors[edge_index(u, v)]
        return a

    @cached_property
    def is_rotation_invariant(self) -> bool:
        n, cols = self.n, self.colors
        for v in range(1, n):
            for u in range(v):
                if cols[edge_index(u, v)] != cols[edge_index((u + 1) % n, (v + 1) % n)]:
                    return False
        return True


@dataclass(frozen=True)
class ColoringVector:
    shape: Shape
    r: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not 2 <= self.r <= MAX_COLORS:
            raise ValueError(f"r must be in 2..{MAX_COLORS}")
        if len(self.values) != vector_length(self.shape):
            raise ValueError(
                f"{self.shape} needs {vector_length(self.shape)} components, got {len(self.values)}")
        for c in self.values:
            if not 1 <= c <= self.r:
                raise ValueError(f"component color {c} outside 1..{self.r}")

    def recolor(self, i: int, c: int) -> "ColoringVector":
        vals = list(self.values)
        vals[i] = c
        return ColoringVector(self.shape, self.r, tuple(vals))


def expand(v: ColoringVector) -> EdgeColoring:
    colors = bytearray(comb(v.shape.n, 2))
    for c, orb in zip(v.values, orbit_indices(v.shape)):
        for e in orb:
            colors[e] = c
    return EdgeColoring(v.shape.n, v.r, bytes(colors))


def as_free(col: EdgeColoring) -> ColoringVector:
    return ColoringVector(Shape.edges(col.n), col.r, tuple(col.colors))


def edge_color(v: ColoringVector, u: int, w: int) -> int:
    shape = v.shape
    n = shape.n
    if u == w:
        raise ValueError("no edge from a vertex to itself")
    if not (0 <= u < n and 0 <= w < n):
        raise IndexError(f"vertex out of range for n={n}")
    if shape.kind == CIRCULANT:
        dist = (w - u) % n
        return v.values[min(dist, n - dist) - 1]
    if shape.kind == EDGES:
        return v.values[edge_index(u, w)]
    d = shape.d
    if u // d > w // d:
        u, w = w, u
    p, j = divmod(u, d)
    q, j2 = divmod(w, d)
    comp = _block_start(shape)[block_order(shape.m).index((p, q))]
    t = (j2 - j) % d
    if p == q:
        return v.values[comp + min(t, d - t) - 1]
    if shape.sym:
        return v.values[comp + min(t, d - t)]
    return v.values[comp + t]


@lru_cache(maxsize=64)
def _block_start(shape: Shape) -> tuple[int, ...]:
    starts, pos = [], 0
    for p, q in block_order(shape.m):
        starts.append(pos)
        pos += block_width(shape, p, q)
    return tuple(starts)


def block_components(shape: Shape, p: int, q: int) -> range:
    """Component indices owned by block (p, q) of a block shape."""
    if p > q:
        p, q = q, p
    start = _block_start(shape)[block_order(shape.m).index((p, q))]
    return range(start, start + block_width(shape, p, q))


def delete_vertices(col: EdgeColoring, S: Iterable[int]) -> EdgeColoring:
    drop = set(S)
    if any(not 0 <= x < col.n for x in drop):
        raise ValueError("vertex to delete is out of range")
    keep = [x for x in range(col.n) if x not in drop]
    if len(keep) < 2:
        raise ValueError("deletion must leave at least two vertices")
    return restrict(col, keep)


def restrict(col: EdgeColoring, keep: Sequence[int]) -> EdgeColoring:
    """Induced coloring on ``keep``, relabeled in the given order."""
    cols = col.colors
    return EdgeColoring.from_function(
        len(keep), col.r, lambda a, b: cols[edge_index(keep[a], keep[b])])


def relabel(col: EdgeColoring, perm: Sequence[int]) -> EdgeColoring:
    """Coloring whose edge {perm[u], perm[v]} has the color of {u, v}."""
    inv = [0] * col.n
    for old, new in enumerate(perm):
        inv[new] = old
    return restrict(col, inv)
