"""Uniform spanning trees from uniform Picard group elements."""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .cycle_maps import EdgeOrdering, InversionStats, eom_inverse
from .divisors import Divisor, pic_group_structure
from .graph import Multigraph
from .orientations import break_representative


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    count: int = 1
    q: str | None = None
    ordering: EdgeOrdering | None = None

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("sample count must be at least 1")


def instrumented_invert(G: Multigraph, D, ordering: EdgeOrdering) -> tuple[frozenset, int]:
    """Inverse edge ordering map plus the number of orientation (flow) calls it made."""
    stats = InversionStats()
    T = eom_inverse(G, D, ordering, stats)
    return T, stats.flow_calls


def random_bits(G: Multigraph) -> dict:
    """Bits drawn per sample against the log2 |S(G)| lower bound."""
    pic = pic_group_structure(G)
    return {
        "minimum": math.log2(pic.order) if pic.order > 1 else 0.0,
        "drawn": sum(math.ceil(math.log2(d)) for d in pic.factors),
    }


def sample_spanning_tree(G: Multigraph, cfg: SamplerConfig, stats: list | None = None) -> Iterator[frozenset]:
    """Yield ``cfg.count`` independent uniform spanning trees.

    Each sample draws an independent residue per invariant factor of Pic^0,
    shifts the resulting class to degree g by adding g(q), takes its break
    representative and inverts the edge ordering map.  Flow-call counts are
    appended to ``stats`` when given.
    """
    q = G.vertices[0] if cfg.q is None else cfg.q
    ordering = (cfg.ordering or EdgeOrdering.default(G)).validate(G)
    pic = pic_group_structure(G, q)
    rng = np.random.default_rng(cfg.seed)
    shift = Divisor.point(q, G.genus)
    for _ in range(cfg.count):
        residues = [int(rng.integers(0, d)) for d in pic.factors]
        D = break_representative(G, pic.element(residues) + shift, q)
        T, calls = instrumented_invert(G, D, ordering)
        if stats is not None:
            stats.append(calls)
        yield T
