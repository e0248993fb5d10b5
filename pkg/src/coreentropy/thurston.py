"""Thurston's entropy algorithm on a critical portrait.

The postcritical pool is the forward orbit of the critical values. Each
unordered pair of pool angles maps to the chain of pairs obtained by cutting
its chord at every block hull that separates the two angles.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .circle import Angle, AngleSet, SeparationVerdict, component_index, arc_length, orbit, separation, tau
from .markov import EntropyValue, entropy
from .portrait import CriticalPortrait

Pair = tuple[Angle, Angle]


@dataclass(frozen=True)
class PairGraph:
    angle_pool: AngleSet
    pairs: tuple[Pair, ...]
    transition: np.ndarray


def postcritical_pool(portrait: CriticalPortrait) -> AngleSet:
    d = portrait.degree
    pts = set()
    for i in range(len(portrait.blocks)):
        pts.update(orbit(d, portrait.image(i)).points)
    return AngleSet(pts)


def _side_arc_length(block: AngleSet, a: Angle) -> object:
    """Length of the component of T minus block that contains a."""
    h = block.elements
    k = component_index(h, a)
    return arc_length(h[k - 1], h[k % len(h)]) if len(h) > 1 else 1


def pair_image(portrait: CriticalPortrait, a: Angle, b: Angle) -> list[Pair]:
    """The pairs covered by the image of the chord {a, b}, with multiplicity."""
    d = portrait.degree
    cuts = [
        i for i, blk in enumerate(portrait.blocks)
        if separation(blk, a, b) is SeparationVerdict.SEPARATED
    ]
    cuts.sort(key=lambda i: _side_arc_length(portrait.blocks[i], a))
    chain = [tau(d, a)] + [portrait.image(i) for i in cuts] + [tau(d, b)]
    out = []
    for x, y in zip(chain, chain[1:]):
        if x != y:
            out.append((x, y) if x < y else (y, x))
    return out


def transition_graph(portrait: CriticalPortrait) -> PairGraph:
    pool = postcritical_pool(portrait)
    pairs = tuple(itertools.combinations(pool.elements, 2))
    index = {p: i for i, p in enumerate(pairs)}
    m = np.zeros((len(pairs), len(pairs)), dtype=np.int64)
    for i, (a, b) in enumerate(pairs):
        for q in pair_image(portrait, a, b):
            m[i, index[q]] += 1
    return PairGraph(pool, pairs, m)


def thurston_entropy(portrait: CriticalPortrait) -> EntropyValue:
    g = transition_graph(portrait)
    if not g.pairs:
        return EntropyValue.zero()
    return entropy(g.transition)
