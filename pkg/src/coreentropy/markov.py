"""Markov graph maps, incidence matrices and their entropy.

Entropy of a non-negative integer matrix is log of its Perron root. The root
is bracketed per strongly connected component by Collatz-Wielandt bounds of a
power-iteration vector; the final bounds are evaluated in exact rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidSystem, NotInvariant, NotSquare

DEFAULT_TOLERANCE = 1e-9
BRACKET_WIDTH = 1e-12
MAX_ITERATIONS = 10**6

EdgeId = Hashable
VertexId = Hashable


@dataclass(frozen=True)
class MarkovSystem:
    vertices: tuple[VertexId, ...]
    edges: Mapping[EdgeId, tuple[VertexId, VertexId]]
    vertex_map: Mapping[VertexId, VertexId]
    edge_cover: Mapping[EdgeId, tuple[EdgeId, ...]]

    @classmethod
    def build(cls, vertices, edges, vertex_map, edge_cover) -> "MarkovSystem":
        """Normalize containers; ``edges`` maps id -> (from, to)."""
        return cls(
            tuple(vertices),
            {e: (u, v) for e, (u, v) in edges.items()},
            dict(vertex_map),
            {e: tuple(c) for e, c in edge_cover.items()},
        )

    @property
    def edge_ids(self) -> list[EdgeId]:
        return sorted(self.edges, key=str)

    def oriented_cover(self, e: EdgeId) -> list[tuple[EdgeId, bool]]:
        """Walk the cover of e from the image of its tail; True marks a forward step."""
        u, v = self.edges[e]
        cur = self.vertex_map[u]
        steps = []
        for x in self.edge_cover[e]:
            a, b = self.edges[x]
            if cur == a:
                steps.append((x, True))
                cur = b
            elif cur == b:
                steps.append((x, False))
                cur = a
            else:
                raise InvalidSystem(f"cover of edge {e!r} breaks at {x!r}: not incident to {cur!r}")
        if cur != self.vertex_map[v]:
            raise InvalidSystem(
                f"cover of edge {e!r} ends at {cur!r}, expected image {self.vertex_map[v]!r} of its head"
            )
        return steps


def check_system(s: MarkovSystem) -> None:
    vs = set(s.vertices)
    if len(vs) != len(s.vertices):
        raise InvalidSystem("duplicate vertex ids")
    for v in s.vertices:
        if v not in s.vertex_map:
            raise InvalidSystem(f"vertex {v!r} has no image")
        if s.vertex_map[v] not in vs:
            raise InvalidSystem(f"vertex {v!r} maps outside the vertex set")
    for e, (a, b) in s.edges.items():
        if a not in vs or b not in vs:
            raise InvalidSystem(f"edge {e!r} has an unknown endpoint")
        cover = s.edge_cover.get(e)
        if not cover:
            raise InvalidSystem(f"edge {e!r} has an empty cover")
        for x in cover:
            if x not in s.edges:
                raise InvalidSystem(f"cover of edge {e!r} names unknown edge {x!r}")
        s.oriented_cover(e)
    extra = set(s.edge_cover) - set(s.edges)
    if extra:
        raise InvalidSystem(f"covers given for unknown edges {sorted(map(str, extra))}")


def incidence_matrix(s: MarkovSystem) -> np.ndarray:
    check_system(s)
    ids = s.edge_ids
    pos = {e: i for i, e in enumerate(ids)}
    m = np.zeros((len(ids), len(ids)), dtype=np.int64)
    for e in ids:
        for x in s.edge_cover[e]:
            m[pos[e], pos[x]] += 1
    return m


# -- spectral radius --------------------------------------------------------

@dataclass(frozen=True)
class EntropyValue:
    value: float
    lower: float
    upper: float
    nilpotent: bool
    radius: float = 0.0

    @classmethod
    def zero(cls, nilpotent: bool = True) -> "EntropyValue":
        return cls(0.0, 0.0, 0.0, nilpotent, 0.0 if nilpotent else 1.0)

    def scaled(self, factor: float) -> "EntropyValue":
        """Entropy divided or multiplied by a positive factor, bracket included."""
        return EntropyValue(
            self.value * factor, self.lower * factor, self.upper * factor, self.nilpotent, self.radius
        )

    def as_dict(self) -> dict:
        return {"value": self.value, "lower": self.lower, "upper": self.upper, "nilpotent": self.nilpotent}


def strongly_connected_components(adj: Sequence[Sequence[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative. Components come out in reverse topological order."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while i < len(adj[v]):
                w = adj[v][i]
                i += 1
                if index[w] == -1:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def _perron_bracket(block: np.ndarray) -> tuple[Fraction, Fraction]:
    """Exact rational bounds on the Perron root of an irreducible block."""
    n = block.shape[0]
    shifted = block.astype(float) + np.eye(n)
    x = np.ones(n)
    for _ in range(MAX_ITERATIONS):
        y = shifted @ x
        ratios = y / x
        lo, hi = ratios.min(), ratios.max()
        if hi - lo <= BRACKET_WIDTH * max(1.0, lo):
            break
        x = y / y.max()
        if x.min() <= 0.0:
            # underflow; restart from a strictly positive vector
            x = np.maximum(x, np.finfo(float).tiny * 1e10)
    xq = [Fraction(float(t)) for t in x]
    ints = [[int(a) for a in row] for row in block]
    bounds = []
    for i in range(n):
        acc = xq[i] + sum((ints[i][j] * xq[j] for j in range(n) if ints[i][j]), Fraction(0))
        bounds.append(acc / xq[i])
    return min(bounds) - 1, max(bounds) - 1


def _log_down(q: Fraction) -> float:
    if q <= 1:
        return 0.0
    return max(0.0, math.nextafter(math.log(float(q)), 0.0))


def _log_up(q: Fraction) -> float:
    if q <= 1:
        return 0.0
    return math.nextafter(math.log(float(q)), math.inf)


def entropy(matrix) -> EntropyValue:
    """Entropy log(rho) of a non-negative integer matrix; 0 when nilpotent."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        if m.size == 0:
            return EntropyValue.zero()
        raise NotSquare(f"matrix of shape {m.shape} is not square")
    if m.size == 0:
        return EntropyValue.zero()
    if not np.all(m == np.round(m)) or np.any(m < 0):
        raise ValueError("incidence matrices must have non-negative integer entries")
    m = m.astype(np.int64)
    n = m.shape[0]
    adj = [[j for j in range(n) if m[i, j]] for i in range(n)]
    lo = hi = None
    for comp in strongly_connected_components(adj):
        if len(comp) == 1 and not m[comp[0], comp[0]]:
            continue
        block = m[np.ix_(comp, comp)]
        b_lo, b_hi = _perron_bracket(block)
        b_lo = max(b_lo, Fraction(1))  # an integer matrix with a cycle has rho >= 1
        b_hi = max(b_hi, b_lo)
        lo = b_lo if lo is None else max(lo, b_lo)
        hi = b_hi if hi is None else max(hi, b_hi)
    if lo is None:
        return EntropyValue.zero(nilpotent=True)
    radius = float((lo + hi) / 2)
    lower, upper = _log_down(lo), _log_up(hi)
    value = min(max(math.log(radius) if radius > 1 else 0.0, lower), upper)
    return EntropyValue(value, lower, upper, False, radius)


def system_entropy(s: MarkovSystem) -> EntropyValue:
    if not s.edges:
        return EntropyValue.zero()
    return entropy(incidence_matrix(s))


# -- constructions ----------------------------------------------------------

def power_system(s: MarkovSystem, k: int) -> MarkovSystem:
    """The same graph with the k-th iterate of the map."""
    if k < 1:
        raise ValueError("k must be >= 1")
    check_system(s)
    vm = dict(s.vertex_map)
    covers = {e: tuple(s.edge_cover[e]) for e in s.edges}
    for _ in range(k - 1):
        current = MarkovSystem(s.vertices, s.edges, vm, covers)
        new_covers = {}
        for e in s.edges:
            path: list = []
            for x, forward in current.oriented_cover(e):
                img = s.edge_cover[x]
                path.extend(img if forward else reversed(img))
            new_covers[e] = tuple(path)
        vm = {v: s.vertex_map[vm[v]] for v in s.vertices}
        covers = new_covers
    return MarkovSystem(s.vertices, dict(s.edges), vm, covers)


def restrict(s: MarkovSystem, edge_ids: Iterable[EdgeId]) -> MarkovSystem:
    """Subsystem on a forward-invariant edge set."""
    keep = set(edge_ids)
    for e in keep:
        for x in s.edge_cover[e]:
            if x not in keep:
                raise NotInvariant(e, f"edge {e!r} covers {x!r} outside the subsystem")
    verts = [v for v in s.vertices if any(v in s.edges[e] for e in keep)]
    vset = set(verts)
    vm = {}
    for v in verts:
        if s.vertex_map[v] not in vset:
            raise NotInvariant(v, f"vertex {v!r} maps outside the subsystem")
        vm[v] = s.vertex_map[v]
    return MarkovSystem(
        tuple(verts),
        {e: s.edges[e] for e in s.edges if e in keep},
        vm,
        {e: s.edge_cover[e] for e in s.edges if e in keep},
    )


@dataclass(frozen=True)
class SplitResult:
    parts: tuple[EntropyValue, ...]
    maximum: EntropyValue
    whole: EntropyValue


def invariant_split(s: MarkovSystem, parts: Sequence[Iterable[EdgeId]]) -> SplitResult:
    """Entropy of each forward-invariant part; the whole system's entropy is their max."""
    check_system(s)
    sets = [set(p) for p in parts]
    seen: set = set()
    for p in sets:
        if seen & p:
            raise ValueError("parts overlap")
        seen |= p
    if seen != set(s.edges):
        raise ValueError("parts do not cover every edge")
    values = []
    for p in sets:
        for e in sorted(p, key=str):
            for x in s.edge_cover[e]:
                if x not in p:
                    raise NotInvariant(e, f"edge {e!r} covers {x!r} outside its part")
        values.append(system_entropy(restrict(s, p)) if p else EntropyValue.zero())
    whole = system_entropy(s)
    best = max(values, key=lambda v: v.value) if values else EntropyValue.zero()
    if abs(best.value - whole.value) > DEFAULT_TOLERANCE:
        raise AssertionError(f"max over parts {best.value} differs from whole {whole.value}")
    return SplitResult(tuple(values), best, whole)


def subdivide_edge(s: MarkovSystem, edge: EdgeId, split_at: int, new_vertex=None) -> MarkovSystem:
    """Insert a valence-two vertex into ``edge``.

    The new vertex maps to the vertex reached after ``split_at`` steps of the
    edge's cover, so both halves keep path covers.
    """
    check_system(s)
    steps = {e: s.oriented_cover(e) for e in s.edges}
    walk = steps[edge]
    if not 1 <= split_at < len(walk):
        raise ValueError(f"split_at must be in [1, {len(walk) - 1}]")
    w = new_vertex if new_vertex is not None else f"{edge}~mid"
    e1, e2 = f"{edge}.1", f"{edge}.2"
    u, v = s.edges[edge]
    cur = s.vertex_map[u]
    for x, forward in walk[:split_at]:
        a, b = s.edges[x]
        cur = b if forward else a

    def relabel(path):
        out = []
        for x, forward in path:
            if x == edge:
                out.extend((e1, e2) if forward else (e2, e1))
            else:
                out.append(x)
        return tuple(out)

    edges = {}
    covers = {}
    for e in s.edges:
        if e == edge:
            edges[e1], edges[e2] = (u, w), (w, v)
            covers[e1] = relabel(walk[:split_at])
            covers[e2] = relabel(walk[split_at:])
        else:
            edges[e] = s.edges[e]
            covers[e] = relabel(steps[e])
    vm = dict(s.vertex_map)
    vm[w] = cur
    return MarkovSystem(tuple(s.vertices) + (w,), edges, vm, covers)
