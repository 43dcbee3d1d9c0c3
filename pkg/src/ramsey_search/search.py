"""Steepest-descent tabu search and simulated annealing over coloring vectors.

Both procedures minimise the weighted bad-subgraph score. Moves recolor one
component of the vector; their effect on the clique counts is priced
incrementally by :class:`~ramsey_search.cliques.IncrementalCounts`.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .cliques import IncrementalCounts, verify
from .coloring import ColoringVector, Shape, vector_length
from .objective import init_weights, perturb_weights, score, update_weights, DEFAULT_K, DEFAULT_EXPONENT


@dataclass(frozen=True)
class SearchConfig:
    L: int = 1000
    K: float = DEFAULT_K
    exponent: float = DEFAULT_EXPONENT
    perturb_amp: float = 0.0
    T0: float | None = None
    alpha: float = 0.999
    T_min: float = 1e-3
    j_max: int | None = None
    max_iters: int = 200_000
    max_restarts: int = 100
    frozen: frozenset = frozenset()
    seed: int = 0
    # cooling epochs between stagnation checks; None derives it from alpha
    stall_window: int | None = None
    probes: int = 100
    # "normalized" averages count shares; "literal" is the unnormalized form
    weight_rule: str = "normalized"

    def __post_init__(self):
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        if self.L < 0:
            raise ValueError("L must be non-negative")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.j_max is not None and self.j_max < 1:
            raise ValueError("j_max must be at least 1")
        if self.T0 is not None and self.T0 <= 0:
            raise ValueError("T0 must be positive")
        if self.weight_rule not in ("normalized", "literal"):
            raise ValueError("weight_rule must be 'normalized' or 'literal'")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Step:
    iteration: int
    score: float
    counts: tuple[int, ...]
    T: float | None
    weights: tuple[float, ...]
    # "move", "epoch", "restart" or "escape" (an uphill tabu move)
    event: str = "move"
    before: float | None = None
    # (component, new color) for tabu moves
    move: tuple[int, int] | None = None


@dataclass
class SearchResult:
    vector: ColoringVector
    counts: tuple[int, ...]
    good: bool
    trajectory: list[Step] = field(default_factory=list)
    iterations: int = 0
    restarts: int = 0
    seed: int = 0
    targets: tuple[int, ...] = ()
    # which split stage produced the result, when it came from a split
    stage: int | None = None

    @property
    def total(self) -> int:
        return sum(self.counts)


def metropolis_accept(s: float, s_star: float, T: float, rng: random.Random) -> bool:
    if T <= 0:
        raise ValueError("temperature must be positive")
    if s_star - s <= 0:
        return True
    return math.exp((s - s_star) / T) > rng.random()


def candidate_set(v: ColoringVector, targets: Sequence[int]) -> set[int]:
    """Components whose move off their current color lowers that color's count."""
    state = IncrementalCounts(v, targets)
    return {i for i in range(len(v.values)) if state.in_bad_clique(i)}


def _palettes(n_comp: int, r: int, allowed) -> list[tuple[int, ...]]:
    if allowed is None:
        full = tuple(range(1, r + 1))
        return [full] * n_comp
    return [tuple(a) for a in allowed]


def random_vector(shape: Shape, r: int, rng: random.Random, base: ColoringVector | None = None,
                  frozen=frozenset(), palettes=None) -> ColoringVector:
    """Random colors on every component not frozen; frozen ones copied from base."""
    n_comp = vector_length(shape)
    pal = palettes or _palettes(n_comp, r, None)
    vals = []
    for i in range(n_comp):
        if i in frozen and base is not None:
            vals.append(base.values[i])
        else:
            vals.append(rng.choice(pal[i]))
    return ColoringVector(shape, r, tuple(vals))


def _zobrist(n_comp: int, r: int, seed: int) -> list[list[int]]:
    zr = random.Random(seed ^ 0x5DEECE66D)
    return [[zr.getrandbits(64) for _ in range(r + 1)] for _ in range(n_comp)]


def _vector_hash(values, table) -> int:
    h = 0
    for i, c in enumerate(values):
        h ^= table[i][c]
    return h


def _check_frozen(shape: Shape, frozen):
    n_comp = vector_length(shape)
    for i in frozen:
        if not 0 <= i < n_comp:
            raise IndexError(f"frozen component {i} out of range")


def tabu_search(shape: Shape, r: int, targets: Sequence[int], cfg: SearchConfig,
                initial: ColoringVector | None = None, allowed=None) -> SearchResult:
    """Steepest descent with a tabu list of recently visited vectors.

    Every iteration prices all recolorings of non-frozen components, drops
    those that would land on a tabu vector, and moves to a uniformly chosen
    minimum-score candidate. When every candidate is tabu the search restarts
    from a fresh random vector (frozen components keep their colors).
    ``allowed`` optionally restricts the colors each component may take.
    """
    targets = tuple(targets)
    if len(targets) != r:
        raise ValueError(f"{len(targets)} targets given for {r} colors")
    if initial is not None and (initial.shape != shape or initial.r != r):
        raise ValueError("initial vector does not match shape/colors")
    _check_frozen(shape, cfg.frozen)
    rng = random.Random(cfg.seed)
    n_comp = vector_length(shape)
    pal = _palettes(n_comp, r, allowed)
    movable = [i for i in range(n_comp) if i not in cfg.frozen and len(pal[i]) > 1]
    table = _zobrist(n_comp, r, cfg.seed)

    V = initial if initial is not None else random_vector(shape, r, rng, palettes=pal)
    base = V
    trajectory: list[Step] = []
    it = restarts = 0
    best_v, best_counts = None, None

    while True:
        state = IncrementalCounts(V, targets)
        w = init_weights(targets, cfg.exponent)
        h = _vector_hash(state.values, table)
        order = deque([h])
        tabu = {h}
        if best_counts is None or sum(state.counts) < sum(best_counts):
            best_v, best_counts = state.vector(), tuple(state.counts)
        exhausted = False
        while sum(state.counts) and not exhausted:
            if it >= cfg.max_iters:
                exhausted = True
                break
            vals = state.values
            cur = score(state.counts, w)
            best_delta = None
            M = []
            for i in movable:
                c_old = vals[i]
                loss = None
                h_off = h ^ table[i][c_old]
                for c in pal[i]:
                    if c == c_old or (h_off ^ table[i][c]) in tabu:
                        continue
                    if loss is None:
                        loss = state.loss(i)
                    gained = state.gain(i, c)
                    d = w[c - 1] * gained - w[c_old - 1] * loss
                    if best_delta is None or d < best_delta:
                        best_delta, M = d, [(i, c, loss, gained)]
                    elif d == best_delta:
                        M.append((i, c, loss, gained))
            if not M:
                restarts += 1
                if restarts > cfg.max_restarts:
                    exhausted = True
                    break
                trajectory.append(Step(it, cur, tuple(state.counts), None, w, "restart"))
                V = random_vector(shape, r, rng, base, cfg.frozen, pal)
                break
            i, c, loss, gained = rng.choice(M)
            c_old = vals[i]
            state.apply(i, c, (loss, gained))
            h ^= table[i][c_old] ^ table[i][c]
            order.append(h)
            tabu.add(h)
            while len(order) > cfg.L:
                tabu.discard(order.popleft())
            it += 1
            new_counts = tuple(state.counts)
            new_score = score(new_counts, w)
            event = "escape" if best_delta > 0 else "move"
            trajectory.append(Step(it, new_score, new_counts, None, w, event, cur, (i, c)))
            if sum(new_counts) < sum(best_counts):
                best_v, best_counts = state.vector(), new_counts
            if sum(new_counts):
                w = update_weights(w, new_counts, cfg.K, cfg.weight_rule == "normalized")
                w = perturb_weights(w, cfg.perturb_amp, rng)
        else:
            best_v, best_counts = state.vector(), tuple(state.counts)
            return _finish(best_v, best_counts, trajectory, it, restarts, cfg.seed, targets)
        if exhausted:
            return _finish(best_v, best_counts, trajectory, it, restarts, cfg.seed, targets)


def _finish(v, counts, trajectory, it, restarts, seed, targets) -> SearchResult:
    good = not any(counts)
    if good:
        # the incremental bookkeeping is checked against a from-scratch recount
        assert verify(v, targets).good, "incremental counts drifted from the verifier"
    return SearchResult(v, tuple(counts), good, trajectory, it, restarts, seed, tuple(targets))


def calibrate_temperature(state: IncrementalCounts, w, movable, pal, rng: random.Random, probes: int) -> float:
    """Mean absolute score change over random probe moves (state untouched)."""
    total = 0.0
    taken = 0
    for _ in range(probes):
        i = rng.choice(movable)
        options = [c for c in pal[i] if c != state.values[i]]
        c = rng.choice(options)
        loss, gain = state.delta(i, c)
        total += abs(w[c - 1] * gain - w[state.values[i] - 1] * loss)
        taken += 1
    mean = total / taken if taken else 0.0
    return mean if mean > 0 else 1.0


def anneal_search(v: ColoringVector, targets: Sequence[int], cfg: SearchConfig, allowed=None) -> SearchResult:
    """Simulated annealing restricted to components lying in bad subgraphs.

    Each cooling epoch rebuilds the candidate set, runs ``j_max`` Metropolis
    steps on it, cools geometrically and adapts the weights. A run that
    reaches ``T_min`` while still improving is restarted from the vector it
    obtained; a run whose best count stalls for ``stall_window`` epochs is
    restarted from the input vector.
    """
    targets = tuple(targets)
    if len(targets) != v.r:
        raise ValueError(f"{len(targets)} targets given for {v.r} colors")
    _check_frozen(v.shape, cfg.frozen)
    rng = random.Random(cfg.seed)
    n_comp = len(v.values)
    pal = _palettes(n_comp, v.r, allowed)
    movable = [i for i in range(n_comp) if i not in cfg.frozen and len(pal[i]) > 1]
    j_max = cfg.j_max or max(1, math.ceil(n_comp / 4))
    window = cfg.stall_window or max(1, math.ceil(math.log(10) / -math.log(cfg.alpha)))

    trajectory: list[Step] = []
    it = restarts = 0
    start = v
    state = IncrementalCounts(v, targets)
    best_v, best_counts = state.vector(), tuple(state.counts)
    if not movable or not sum(state.counts):
        return _finish(best_v, best_counts, trajectory, it, restarts, cfg.seed, targets)

    while True:
        w = init_weights(targets, cfg.exponent)
        if sum(state.counts):
            # calibrate at the scale the moving-average update settles to
            w = update_weights(w, state.counts, cfg.K, cfg.weight_rule == "normalized")
        T = cfg.T0 or calibrate_temperature(state, w, movable, pal, rng, cfg.probes)
        run_start_best = sum(best_counts)
        run_best = mark = sum(state.counts)
        s = score(state.counts, w)
        epoch = 0
        outcome = None
        while True:
            I = [i for i in movable if state.in_bad_clique(i)] or movable
            for _ in range(j_max):
                i = rng.choice(I)
                c_old = state.values[i]
                c = rng.choice([x for x in pal[i] if x != c_old])
                loss, gain = state.delta(i, c)
                s_star = s - w[c_old - 1] * loss + w[c - 1] * gain
                it += 1
                if metropolis_accept(s, s_star, T, rng):
                    state.apply(i, c, (loss, gain))
                    s = s_star
                    total = sum(state.counts)
                    run_best = min(run_best, total)
                    if total < sum(best_counts):
                        best_v, best_counts = state.vector(), tuple(state.counts)
                    if not total:
                        break
            T *= cfg.alpha
            epoch += 1
            counts = tuple(state.counts)
            if sum(counts):
                w = update_weights(w, counts, cfg.K, cfg.weight_rule == "normalized")
                w = perturb_weights(w, cfg.perturb_amp, rng)
            s = score(counts, w)
            trajectory.append(Step(it, s, counts, T, w, "epoch"))
            if not sum(counts):
                outcome = "good"
                break
            if it >= cfg.max_iters:
                outcome = "budget"
                break
            if T <= cfg.T_min:
                outcome = "cold"
                break
            if epoch % window == 0:
                if run_best > 0.99 * mark:
                    outcome = "stalled"
                    break
                mark = run_best
        if outcome in ("good", "budget"):
            return _finish(best_v, best_counts, trajectory, it, restarts, cfg.seed, targets)
        if restarts >= cfg.max_restarts:
            return _finish(best_v, best_counts, trajectory, it, restarts, cfg.seed, targets)
        if outcome == "cold" and sum(best_counts) >= run_start_best:
            return _finish(best_v, best_counts, trajectory, it, restarts, cfg.seed, targets)
        restarts += 1
        if outcome == "stalled":
            state = IncrementalCounts(start, targets)
        trajectory.append(Step(it, score(state.counts, w), tuple(state.counts), T, w, "restart"))
