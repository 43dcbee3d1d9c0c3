"""Weighted bad-subgraph score and weight adaptation."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

# keeps a color with persistently zero counts visible to the search
WEIGHT_FLOOR = 1e-6

DEFAULT_K = 50.0
DEFAULT_EXPONENT = 1.5


@dataclass(frozen=True)
class ObjectiveConfig:
    K: float = DEFAULT_K
    exponent: float = DEFAULT_EXPONENT
    perturb_amp: float = 0.0

    def __post_init__(self):
        if not self.K > 0:
            raise ValueError("K must be positive")
        if not 1.0 <= self.exponent <= 2.0:
            raise ValueError("exponent must lie in [1, 2]")
        if not 0.0 <= self.perturb_amp <= 1.0:
            raise ValueError("perturb_amp must lie in [0, 1]")


def score(counts: Sequence[int], w: Sequence[float]) -> float:
    if len(counts) != len(w):
        raise ValueError("counts and weights differ in length")
    return math.fsum(wc * fc for wc, fc in zip(w, counts))


def init_weights(targets: Sequence[int], exponent: float = DEFAULT_EXPONENT) -> tuple[float, ...]:
    """Weights favouring the colors with small clique bounds.

    w_c is proportional to (max_j k_j / k_c) ** exponent and the result sums
    to one. For two colors (s, t) with s <= t the ratio w_s / w_t is
    (t/s) ** exponent, inside [t/s, (t/s)**2] for any exponent in [1, 2].
    """
    if not 1.0 <= exponent <= 2.0:
        raise ValueError("exponent must lie in [1, 2]")
    top = max(targets)
    raw = [(top / k) ** exponent for k in targets]
    total = math.fsum(raw)
    return tuple(max(x / total, WEIGHT_FLOOR) for x in raw)


def update_weights(w: Sequence[float], counts: Sequence[int], K: float = DEFAULT_K,
                   normalized: bool = False) -> tuple[float, ...]:
    """Moving-average update w_c <- (K*w_c + f_c) / ((K+1) * sum_i f_i).

    With ``normalized=True`` the count share is averaged instead,
    w_c <- (K*w_c + f_c/sum_i f_i) / (K+1), so the old weight decays by
    K/(K+1) per update regardless of how many bad subgraphs remain. The plain
    form forgets the old weight almost entirely whenever sum_i f_i > 1.
    """
    if K <= 0:
        raise ValueError("K must be positive")
    total = sum(counts)
    if total <= 0:
        raise ValueError("no bad subgraphs left; weights are no longer defined")
    if normalized:
        return tuple(max((K * wc + fc / total) / (K + 1), WEIGHT_FLOOR) for wc, fc in zip(w, counts))
    denom = (K + 1) * total
    return tuple(max((K * wc + fc) / denom, WEIGHT_FLOOR) for wc, fc in zip(w, counts))


def perturb_weights(w: Sequence[float], amp: float, rng: random.Random) -> tuple[float, ...]:
    if not 0.0 <= amp <= 1.0:
        raise ValueError("amp must lie in [0, 1]")
    if amp == 0:
        return tuple(w)
    return tuple(max(wc * rng.uniform(1 - amp, 1 + amp), WEIGHT_FLOOR) for wc in w)
