"""Combinatorial Hubbard forests: entropy, component cycles, J-ends and mu.

Forests are hand-authored inputs. A forest carries its Markov dynamics plus,
for every vertex, the external angles landing at it (Julia vertices) or
supporting it (Fatou centers).
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Sequence, Union

from .circle import AngleSet, component_index, tau
from .errors import InconsistentAngles, InvalidSystem, ModelError, UnresolvedVerdict, ValidationFailed
from .markov import (
    DEFAULT_TOLERANCE,
    EntropyValue,
    MarkovSystem,
    check_system,
    power_system,
    restrict,
    system_entropy,
)
from .portrait import (
    ClassStructure,
    CriticalMarking,
    CriticalPortrait,
    Role,
    Side,
    enumerate_weak_julia_markings,
)
from .thurston import thurston_entropy

VertexId = Hashable


class VertexKind(enum.Enum):
    FATOU = "FatouCenter"
    JULIA = "Julia"


@dataclass(frozen=True)
class Vertex:
    id: VertexId
    kind: VertexKind
    angles: AngleSet = field(default_factory=AngleSet)
    local_degree: int = 1
    critical: bool = False
    postcritical: bool = False


@dataclass(frozen=True)
class HubbardForest:
    degree: int
    vertices: tuple[Vertex, ...]
    components: tuple[tuple[VertexId, ...], ...]
    system: MarkovSystem
    portrait: CriticalPortrait | None = None

    @property
    def vertex(self) -> dict[VertexId, Vertex]:
        return {v.id: v for v in self.vertices}

    @property
    def component_of(self) -> dict[VertexId, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}

    def neighbours(self) -> dict[VertexId, list[tuple[VertexId, Hashable]]]:
        adj: dict = {v.id: [] for v in self.vertices}
        for e in self.system.edge_ids:
            a, b = self.system.edges[e]
            adj[a].append((b, e))
            adj[b].append((a, e))
        return adj

    def julia_critical(self) -> list[Vertex]:
        return [v for v in self.vertices if v.kind is VertexKind.JULIA and v.critical]

    def fatou_marked(self) -> list[Vertex]:
        """Fatou centers that are critical or postcritical."""
        return [v for v in self.vertices if v.kind is VertexKind.FATOU and (v.critical or v.postcritical)]


def forest_report(f: HubbardForest) -> list[dict]:
    report: list[dict] = []

    def bad(kind: str, message: str, **extra) -> None:
        report.append({"check": kind, "message": message, **extra})

    s = f.system
    ids = [v.id for v in f.vertices]
    if set(ids) != set(s.vertices) or len(ids) != len(s.vertices):
        bad("vertices", "vertex list disagrees with the dynamics")
    try:
        check_system(s)
    except InvalidSystem as exc:
        bad("markov", str(exc))
        return report

    comp_of = {}
    for i, comp in enumerate(f.components):
        for v in comp:
            if v in comp_of:
                bad("components", f"vertex {v!r} is in two components", vertex=v)
            comp_of[v] = i
    missing = [v for v in ids if v not in comp_of]
    if missing:
        bad("components", f"vertices {missing} belong to no component")
        return report
    adj = f.neighbours()
    for i, comp in enumerate(f.components):
        cedges = [e for e in s.edges if comp_of[s.edges[e][0]] == i]
        for e in cedges:
            if comp_of[s.edges[e][1]] != i:
                bad("components", f"edge {e!r} joins two components", edge=e)
        if len(cedges) != len(comp) - 1:
            bad("tree", f"component {i} has {len(comp)} vertices and {len(cedges)} edges", component=i)
            continue
        seen = {comp[0]}
        queue = deque([comp[0]])
        while queue:
            v = queue.popleft()
            for w, _ in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if seen != set(comp):
            bad("tree", f"component {i} is not connected", component=i)
    for i, comp in enumerate(f.components):
        targets = {comp_of[s.vertex_map[v]] for v in comp}
        cedges = [e for e in s.edges if comp_of[s.edges[e][0]] == i]
        for e in cedges:
            targets.update(comp_of[s.edges[x][0]] for x in s.edge_cover[e])
        if len(targets) > 1:
            bad("dynamics", f"component {i} maps into components {sorted(targets)}", component=i)

    byid = f.vertex
    for v in f.vertices:
        img = byid[s.vertex_map[v.id]]
        stray = [str(a) for a in v.angles if tau(f.degree, a) not in img.angles]
        if stray:
            bad("angles", f"vertex {v.id!r}: images of {stray} are not angles of {img.id!r}", vertex=v.id)
        if v.critical and v.local_degree < 2:
            bad("critical", f"critical vertex {v.id!r} has local degree {v.local_degree}", vertex=v.id)
        if not v.critical and v.local_degree != 1:
            bad("critical", f"non-critical vertex {v.id!r} has local degree {v.local_degree}", vertex=v.id)
    total = sum(v.local_degree - 1 for v in f.vertices if v.critical)
    if total > f.degree - 1:
        bad("critical", f"total criticality {total} exceeds {f.degree - 1}")

    if f.portrait is not None:
        cs = ClassStructure(f.portrait)
        sig: dict = {}
        for v in f.vertices:
            if v.kind is not VertexKind.JULIA:
                continue
            for a in v.angles:
                key = (cs.itinerary(a, Side.LEFT), cs.itinerary(a, Side.RIGHT))
                other = sig.setdefault(key, v.id)
                if other != v.id:
                    bad("landing", f"vertices {other!r} and {v.id!r} carry angles with equal itineraries",
                        vertex=v.id)
    return report


def validate_forest(f: HubbardForest) -> HubbardForest:
    report = forest_report(f)
    if report:
        raise ValidationFailed("Hubbard forest", report)
    return f


def forest_entropy(f: HubbardForest) -> EntropyValue:
    return system_entropy(f.system)


# -- cycles of components -----------------------------------------------------

@dataclass(frozen=True)
class CycleEntry:
    components: tuple[int, ...]
    period: int
    entropy: EntropyValue


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[CycleEntry, ...]
    maximum: EntropyValue


def _component_map(f: HubbardForest) -> list[int]:
    comp_of = f.component_of
    return [comp_of[f.system.vertex_map[comp[0]]] for comp in f.components]


def _edges_of(f: HubbardForest, comp: int) -> list:
    members = set(f.components[comp])
    return [e for e in f.system.edge_ids if f.system.edges[e][0] in members]


def cycle_decomposition(f: HubbardForest) -> CycleDecomposition:
    """Cycles of components; each carries h_top(f^p | H) / p for a representative H."""
    cmap = _component_map(f)
    on_cycle: set[int] = set()
    cycles: list[CycleEntry] = []
    for start in range(len(cmap)):
        path, pos = [], {}
        x = start
        while x not in pos and x not in on_cycle:
            pos[x] = len(path)
            path.append(x)
            x = cmap[x]
        if x in on_cycle:
            continue
        cyc = path[pos[x]:]
        on_cycle.update(cyc)
        k = cyc.index(min(cyc))
        cyc = cyc[k:] + cyc[:k]
        p = len(cyc)
        edges = _edges_of(f, cyc[0])
        if edges:
            sub = restrict(power_system(f.system, p), edges)
            h = system_entropy(sub).scaled(1.0 / p)
        else:
            h = EntropyValue.zero()
        cycles.append(CycleEntry(tuple(cyc), p, h))
    cycles.sort(key=lambda c: c.components)
    best = max((c.entropy for c in cycles), key=lambda v: v.value, default=EntropyValue.zero())
    return CycleDecomposition(tuple(cycles), best)


# -- J-ends -------------------------------------------------------------------

MarkingBlocks = tuple[tuple[VertexId, AngleSet], ...]


@dataclass(frozen=True)
class JEndPartition:
    marking: MarkingBlocks
    classes: tuple[tuple[VertexId, ...], ...]
    class_map: tuple[int, ...]
    periods: dict[int, int]
    notes: tuple[str, ...] = ()

    @property
    def periodic_classes(self) -> list[int]:
        return sorted(self.periods)


def _check_marking(f: HubbardForest, marking: MarkingBlocks) -> None:
    byid = f.vertex
    for c, block in marking:
        v = byid.get(c)
        if v is None or v.kind is not VertexKind.JULIA or not v.critical:
            raise ValueError(f"marking block at {c!r} is not attached to a Julia critical vertex")
        if any(a not in v.angles for a in block):
            raise ValueError(f"marking block {block!r} is not drawn from the angles of {c!r}")


def _side(f: HubbardForest, v: Vertex, c: VertexId, block: AngleSet) -> int | None:
    if v.id == c:
        return None
    hull = block.elements
    comps = {component_index(hull, a) for a in v.angles}
    comps.discard(None)
    if len(comps) != 1:
        what = "straddles" if comps else "cannot be placed relative to"
        raise InconsistentAngles(f"vertex {v.id!r} {what} the cut {block!r} at {c!r}")
    return comps.pop()


def j_ends(f: HubbardForest, marking: Sequence[tuple[VertexId, AngleSet]]) -> JEndPartition:
    """Partition Fatou critical/postcritical vertices by J-itinerary."""
    marking = tuple((c, AngleSet(b)) for c, b in marking)
    _check_marking(f, marking)
    byid = f.vertex
    vm = f.system.vertex_map
    marked = [v.id for v in f.fatou_marked()]
    sides: dict = {}
    for vid in {x for v in marked for x in _forward(vm, v)}:
        sides[vid] = tuple(_side(f, byid[vid], c, b) for c, b in marking)

    def separated(x, y) -> bool:
        return any(a is not None and b is not None and a != b for a, b in zip(sides[x], sides[y]))

    def same_itinerary(x, y) -> bool:
        seen = set()
        while (x, y) not in seen:
            seen.add((x, y))
            if x != y and separated(x, y):
                return False
            x, y = vm[x], vm[y]
        return True

    classes: list[list] = []
    for v in marked:
        for cls in classes:
            if same_itinerary(cls[0], v):
                cls.append(v)
                break
        else:
            classes.append([v])
    classes_t = tuple(tuple(c) for c in classes)
    where = {v: i for i, c in enumerate(classes_t) for v in c}
    class_map = []
    for c in classes_t:
        images = {where[vm[v]] for v in c}
        if len(images) != 1:
            raise AssertionError(f"class {c} is not mapped into a single class")
        class_map.append(images.pop())
    periods = {}
    for i in range(len(classes_t)):
        x, n = class_map[i], 1
        while x != i and n <= len(classes_t):
            x, n = class_map[x], n + 1
        if x == i:
            periods[i] = n
    return JEndPartition(marking, classes_t, tuple(class_map), periods)


def _forward(vm, v):
    seen = []
    while v not in seen:
        seen.append(v)
        v = vm[v]
    return seen


# -- H_J and mu -----------------------------------------------------------------

@dataclass(frozen=True)
class HJForest:
    edges: tuple
    vertices: tuple
    ends: JEndPartition
    entropy: EntropyValue


def _steiner_edges(f: HubbardForest, members: Sequence[VertexId]) -> set:
    adj = f.neighbours()
    comp_of = f.component_of
    out: set = set()
    by_comp: dict[int, list] = {}
    for v in members:
        by_comp.setdefault(comp_of[v], []).append(v)
    for group in by_comp.values():
        root = group[0]
        parent = {root: None}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, e in adj[v]:
                if w not in parent:
                    parent[w] = (v, e)
                    queue.append(w)
        for v in group[1:]:
            while parent[v] is not None:
                v, e = parent[v]
                out.add(e)
    return out


def h_j_forest(f: HubbardForest, marking: Sequence[tuple[VertexId, AngleSet]]) -> HJForest:
    ends = j_ends(f, marking)
    edges: set = set()
    for i in ends.periodic_classes:
        edges |= _steiner_edges(f, ends.classes[i])
    if not edges:
        return HJForest((), (), ends, EntropyValue.zero())
    sub = restrict(f.system, edges)
    marked_crit = {c for c, _ in ends.marking}
    hit = sorted(str(v) for v in sub.vertices if v in marked_crit)
    if hit:
        ends = JEndPartition(
            ends.marking, ends.classes, ends.class_map, ends.periods,
            ends.notes + (f"H_J passes through marked critical vertices {hit}",),
        )
    return HJForest(tuple(sub.edge_ids), sub.vertices, ends, system_entropy(sub))


@dataclass(frozen=True)
class MuResult:
    entropy: EntropyValue
    witness: MarkingBlocks
    forest: HJForest


def julia_markings(f: HubbardForest) -> list[MarkingBlocks]:
    crit = f.julia_critical()
    raw = enumerate_weak_julia_markings(f.degree, [(v.angles, v.local_degree) for v in crit])
    return [tuple((crit[i].id, b) for i, b in m) for m in raw]


def mu(f: HubbardForest) -> MuResult:
    """Minimum of h_top on H_J over all weak Julia markings, with a witness."""
    best: MuResult | None = None
    for marking in julia_markings(f):
        hj = h_j_forest(f, marking)
        if best is None or hj.entropy.value < best.entropy.value - DEFAULT_TOLERANCE:
            best = MuResult(hj.entropy, marking, hj)
    assert best is not None  # enumeration always yields at least the empty marking
    return best


# -- verdicts -------------------------------------------------------------------

class Verdict(enum.Enum):
    CONTINUOUS = "Continuous"
    DISCONTINUOUS = "Discontinuous"


@dataclass(frozen=True)
class ContinuityVerdict:
    verdict: Verdict
    h: EntropyValue
    mu: EntropyValue
    witness: MarkingBlocks | None = None
    details: dict = field(default_factory=dict)


def decide(h: EntropyValue, m: EntropyValue, tolerance: float = DEFAULT_TOLERANCE) -> Verdict:
    """Continuous iff h and mu agree within tolerance, judged on their brackets."""
    gap_hi = max(h.upper - m.lower, m.upper - h.lower)
    gap_lo = max(0.0, h.lower - m.upper, m.lower - h.upper)
    if gap_hi <= tolerance:
        return Verdict.CONTINUOUS
    if gap_lo > tolerance:
        return Verdict.DISCONTINUOUS
    raise UnresolvedVerdict(f"entropy brackets straddle the tolerance: h={h.as_dict()} mu={m.as_dict()}")


def poly_continuity_verdict(f: HubbardForest, tolerance: float = DEFAULT_TOLERANCE) -> ContinuityVerdict:
    h = forest_entropy(f)
    m = mu(f)
    return ContinuityVerdict(decide(h, m.entropy, tolerance), h, m.entropy, m.witness)


Model = Union[HubbardForest, CriticalMarking, CriticalPortrait]


def model_entropy(model: Model) -> EntropyValue:
    if isinstance(model, HubbardForest):
        return forest_entropy(model)
    if isinstance(model, CriticalMarking):
        return thurston_entropy(model.portrait)
    return thurston_entropy(model)


def model_has_julia_critical(model: Model) -> bool:
    if isinstance(model, HubbardForest):
        return bool(model.julia_critical())
    if isinstance(model, CriticalMarking):
        return any(r is not Role.FATOU for r in model.roles)
    raise ModelError("a bare portrait does not say which critical points are Julia; give roles or a forest")


def model_mu(model: Model) -> tuple[EntropyValue, MarkingBlocks | None]:
    """mu of a renormalization model.

    Markings without Julia blocks are hyperbolic: the single J-end is the
    whole tree, so mu equals h. Other portrait models need a forest.
    """
    if isinstance(model, HubbardForest):
        r = mu(model)
        return r.entropy, r.witness
    if not model_has_julia_critical(model):
        return model_entropy(model), ()
    raise ModelError("mu of a portrait model with Julia critical blocks needs a Hubbard forest")


def model_verdict(model: Model, tolerance: float = DEFAULT_TOLERANCE) -> ContinuityVerdict:
    h = model_entropy(model)
    m, witness = model_mu(model)
    return ContinuityVerdict(decide(h, m, tolerance), h, m, witness)


def ppf_continuity_verdict(
    components: Sequence[tuple[int, Model]], tolerance: float = DEFAULT_TOLERANCE
) -> ContinuityVerdict:
    """Continuity at a partial postcritically-finite polynomial from its renormalizations."""
    if not components:
        zero = EntropyValue.zero()
        return ContinuityVerdict(Verdict.CONTINUOUS, zero, zero, None, {"renormalizable": False})
    scaled = []
    for p, model in components:
        if p < 1:
            raise ValueError(f"period must be >= 1, got {p}")
        scaled.append(model_entropy(model).scaled(1.0 / p))
    top = max(v.value for v in scaled)
    maximal = [i for i, v in enumerate(scaled) if v.value >= top - tolerance]
    best_mu = None
    witness = None
    per = {}
    for i in maximal:
        p, model = components[i]
        m, w = model_mu(model)
        m = m.scaled(1.0 / p)
        per[i] = {"h": scaled[i].value, "mu": m.value, "period": p}
        if best_mu is None or m.value > best_mu.value:
            best_mu, witness = m, w
    h = scaled[maximal[0]]
    assert best_mu is not None
    return ContinuityVerdict(
        decide(h, best_mu, tolerance), h, best_mu, witness,
        {"renormalizable": True, "maximal_components": maximal, "per_component": per},
    )
