"""Critical portraits, critical markings, unlinked classes and itineraries."""
from __future__ import annotations

import bisect
import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .circle import (
    Angle,
    AngleLike,
    AngleSet,
    arc_length,
    as_angle,
    component_index,
    hausdorff_distance,
    hulls_meet_at_most_once,
    orbit,
    tau,
    unlinked,
)
from .errors import EmptyEnumeration, ValidationFailed


class Role(enum.Enum):
    FATOU = "fatou"
    JULIA = "julia"
    ESCAPE = "escape"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class CriticalPortrait:
    degree: int
    blocks: tuple[AngleSet, ...]

    @property
    def angles(self) -> tuple[Angle, ...]:
        """All block angles, sorted and without repetition."""
        return tuple(sorted({a for b in self.blocks for a in b}))

    def image(self, i: int) -> Angle:
        """The common image of block i."""
        return tau(self.degree, self.blocks[i][0])

    def canonical(self) -> "CriticalPortrait":
        return CriticalPortrait(self.degree, tuple(sorted(self.blocks)))


def portrait_report(d: int, blocks: Sequence[AngleSet]) -> list[dict]:
    """Every violated clause of the critical portrait definition."""
    report: list[dict] = []
    if d < 2:
        report.append({"clause": 0, "blocks": [], "message": f"degree {d} < 2"})
        return report
    if not blocks:
        report.append({"clause": 0, "blocks": [], "message": "no blocks"})
        return report
    for i, b in enumerate(blocks):
        images = {tau(d, a) for a in b}
        if len(images) != 1:
            report.append({
                "clause": 1,
                "blocks": [i],
                "message": f"block {i} has images {sorted(str(x) for x in images)} under tau_{d}",
            })
    for i, j in itertools.combinations(range(len(blocks)), 2):
        if len(blocks[i]) and len(blocks[j]) and not unlinked(blocks[i], blocks[j]):
            report.append({"clause": 2, "blocks": [i, j], "message": f"blocks {i} and {j} are linked"})
    small = [i for i, b in enumerate(blocks) if len(b) < 2]
    if small:
        report.append({"clause": 3, "blocks": small, "message": f"blocks {small} have fewer than 2 angles"})
    total = sum(len(b) - 1 for b in blocks)
    if total != d - 1:
        report.append({
            "clause": 3,
            "blocks": list(range(len(blocks))),
            "message": f"sum of (#block - 1) is {total}, expected {d - 1}",
        })
    return report


def validate_portrait(d: int, blocks: Iterable[Iterable[AngleLike]]) -> CriticalPortrait:
    sets = tuple(b if isinstance(b, AngleSet) else AngleSet(b) for b in blocks)
    report = portrait_report(d, sets)
    if report:
        raise ValidationFailed("critical portrait", report)
    return CriticalPortrait(d, sets)


def quadratic_portrait(theta: AngleLike) -> CriticalPortrait:
    t = as_angle(theta)
    half = t.value / 2
    return CriticalPortrait(2, (AngleSet([half, half + Fraction(1, 2)]),))


def portrait_distance(a: CriticalPortrait, b: CriticalPortrait) -> Fraction:
    """Hausdorff distance matched block by block after canonical sorting.

    Portraits with different block counts fall back to the distance between
    the unions of their angles.
    """
    if len(a.blocks) != len(b.blocks):
        return hausdorff_distance(AngleSet(a.angles), AngleSet(b.angles))
    pairs = zip(sorted(a.blocks), sorted(b.blocks))
    return max(hausdorff_distance(x, y) for x, y in pairs)


# -- unlinked classes -------------------------------------------------------

@dataclass(frozen=True)
class UnlinkedClass:
    index: int
    intervals: tuple[tuple[Angle, Angle], ...]

    @property
    def length(self) -> Fraction:
        return sum((arc_length(s, e) for s, e in self.intervals), Fraction(0))

    def contains(self, x: AngleLike) -> bool:
        from .circle import in_open_arc
        return any(in_open_arc(x, s, e) for s, e in self.intervals)


class ClassStructure:
    """The d unlinked classes of a portrait, with one-sided membership lookup."""

    def __init__(self, portrait: CriticalPortrait):
        self.portrait = portrait
        cuts = list(portrait.angles)
        self._cuts = cuts
        hulls = [b.elements for b in portrait.blocks]
        n = len(cuts)
        gaps = [(cuts[k], cuts[(k + 1) % n]) for k in range(n)]
        groups: dict[tuple, list[int]] = {}
        for k, (s, e) in enumerate(gaps):
            mid = Angle(s.value + arc_length(s, e) / 2) if n > 1 else Angle(s.value + Fraction(1, 2))
            sig = tuple(component_index(h, mid) for h in hulls)
            groups.setdefault(sig, []).append(k)
        ordered = sorted(groups.values(), key=lambda ks: min(gaps[k][0] for k in ks))
        self._gap_class: list[int] = [0] * n
        classes = []
        for idx, ks in enumerate(ordered, start=1):
            ks = sorted(ks, key=lambda k: gaps[k][0])
            for k in ks:
                self._gap_class[k] = idx
            classes.append(UnlinkedClass(idx, tuple(gaps[k] for k in ks)))
        self.classes: tuple[UnlinkedClass, ...] = tuple(classes)

    def class_of(self, t: AngleLike, side: Side | str) -> int:
        """Index (1-based) of the class containing (t, t+eps) or (t-eps, t)."""
        side = Side(side)
        t = as_angle(t)
        cuts = self._cuts
        n = len(cuts)
        i = bisect.bisect_left(cuts, t)
        on_cut = i < n and cuts[i] == t
        if side is Side.RIGHT:
            gap = i % n if on_cut else (i - 1) % n
        else:
            gap = (i - 1) % n
        return self._gap_class[gap]

    def itinerary(self, t: AngleLike, side: Side | str) -> "Itinerary":
        orb = orbit(self.portrait.degree, t)
        digits = [self.class_of(x, side) for x in orb.points]
        return Itinerary.reduced(orb.preperiod, orb.period, digits)


def unlinked_classes(portrait: CriticalPortrait) -> tuple[UnlinkedClass, ...]:
    return ClassStructure(portrait).classes


@dataclass(frozen=True)
class Itinerary:
    preperiod: int
    period: int
    digits: tuple[int, ...]

    @classmethod
    def reduced(cls, preperiod: int, period: int, digits: Sequence[int]) -> "Itinerary":
        digits = list(digits)
        cycle = digits[preperiod:]
        for q in range(1, period + 1):
            if period % q == 0 and all(cycle[k] == cycle[k % q] for k in range(period)):
                break
        cycle = cycle[:q]
        pre = digits[:preperiod]
        while pre and pre[-1] == cycle[-1]:
            pre.pop()
            cycle = cycle[-1:] + cycle[:-1]
        return cls(len(pre), len(cycle), tuple(pre + cycle))

    def digit(self, n: int) -> int:
        if n < self.preperiod:
            return self.digits[n]
        return self.digits[self.preperiod + (n - self.preperiod) % self.period]


def itinerary(portrait: CriticalPortrait, t: AngleLike, side: Side | str) -> Itinerary:
    return ClassStructure(portrait).itinerary(t, side)


# -- critical markings ------------------------------------------------------

@dataclass(frozen=True)
class CriticalMarking:
    portrait: CriticalPortrait
    roles: tuple[Role, ...]
    preferred: tuple[Angle | None, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.roles) != len(self.portrait.blocks):
            raise ValueError("one role per block is required")
        pref = self.preferred or (None,) * len(self.roles)
        if len(pref) != len(self.roles):
            raise ValueError("preferred angles must align with blocks")
        object.__setattr__(self, "preferred", tuple(pref))
        for i, (p, b) in enumerate(zip(self.preferred, self.portrait.blocks)):
            if p is not None and p not in b:
                raise ValueError(f"preferred angle {p} is not in block {i}")

    def blocks_with(self, *roles: Role) -> list[AngleSet]:
        return [b for b, r in zip(self.portrait.blocks, self.roles) if r in roles]

    @property
    def fatou(self) -> list[AngleSet]:
        return self.blocks_with(Role.FATOU)

    @property
    def julia(self) -> list[AngleSet]:
        return self.blocks_with(Role.JULIA)

    @property
    def lam(self) -> list[AngleSet]:
        """Julia and escaping blocks together."""
        return self.blocks_with(Role.JULIA, Role.ESCAPE)


def _participants(blocks: Iterable[AngleSet]) -> list[Angle]:
    return sorted({a for b in blocks for a in b})


def check_marking_properties(marking: CriticalMarking) -> list[dict]:
    """Pass/fail for each of the seven marking properties C1..C7.

    Quantifiers over angles range over the finite union of forward orbits of
    the participating angles.
    """
    p = marking.portrait
    d = p.degree
    cs = ClassStructure(p)
    fatou, lam = marking.fatou, marking.lam
    f_part, l_part = _participants(fatou), _participants(lam)
    orbits = {a: orbit(d, a) for a in _participants(p.blocks)}
    pool = sorted({x for o in orbits.values() for x in o.points})
    out: list[dict] = []

    out.append({"property": "C1", "passed": True, "detail": "all angles are rational"})

    # C2: shift every L-block by an infinitesimal -eps; keys (value, shift) order the circle
    def keys(block: AngleSet, shifted: bool) -> list[tuple[Fraction, int]]:
        if not shifted:
            return [(a.value, 0) for a in block]
        return [((a.value if a.value else Fraction(1)), -1) for a in block]

    family = [keys(b, False) for b in fatou] + [keys(b, True) for b in lam]
    bad = [
        (i, j) for i, j in itertools.combinations(range(len(family)), 2)
        if not hulls_meet_at_most_once(family[i], family[j], allow_touch=False)
    ]
    out.append({
        "property": "C2",
        "passed": not bad,
        "detail": "F and L-eps hulls pairwise disjoint" if not bad else f"overlapping hulls {bad}",
    })

    def hierarchic(blocks: list[AngleSet], part: list[Angle]) -> list[str]:
        problems = []
        for k, b in enumerate(blocks):
            hits = set()
            for a in part:
                o = orbits[a]
                for n in range(1, o.preperiod + o.period + 1):
                    x = o.at(n)
                    if x in b:
                        hits.add(x)
            if len(hits) > 1:
                problems.append(f"block {k} hit at {sorted(str(h) for h in hits)}")
        return problems

    c3 = hierarchic(fatou, f_part) + hierarchic(lam, l_part)
    out.append({"property": "C3", "passed": not c3, "detail": "; ".join(c3) or "hierarchic"})

    f_set = set(f_part)
    c4 = [str(a) for a in f_part if not any(x in f_set for x in orbits[a].cycle)]
    out.append({
        "property": "C4",
        "passed": not c4,
        "detail": f"no periodic F-argument reached from {c4}" if c4 else "every F-argument reaches a periodic F-argument",
    })

    c5 = [str(a) for a in l_part if orbits[a].is_periodic]
    out.append({
        "property": "C5",
        "passed": not c5,
        "detail": f"periodic L-arguments {c5}" if c5 else ("vacuous" if not l_part else "no periodic L-arguments"),
    })

    right = {x: cs.itinerary(x, Side.RIGHT) for x in pool}
    c6 = []
    for t in f_part:
        if not orbits[t].is_periodic:
            continue
        for u in pool:
            if u != t and right[u] == right[t]:
                c6.append(f"{t}~{u}")
    out.append({"property": "C6", "passed": not c6, "detail": "; ".join(c6) or "injective on periodic F-arguments"})

    left = {x: cs.itinerary(x, Side.LEFT) for x in pool}
    c7 = []
    l_pre = [a for a in l_part if not orbits[a].is_periodic]
    for t in l_pre:
        o = orbits[t]
        for n in range(o.preperiod + o.period):
            x = o.at(n)
            for u in l_pre:
                if u != x and left[x] == left[u]:
                    c7.append(f"tau^{n}({t})={x}~{u}")
    out.append({"property": "C7", "passed": not c7, "detail": "; ".join(c7) or "injective on L-orbits"})
    return out


# -- weak Julia markings ----------------------------------------------------

JuliaMarking = tuple[tuple[int, AngleSet], ...]


def _families(d: int, args: AngleSet, delta: int) -> list[tuple[AngleSet, ...]]:
    candidates = []
    for size in range(2, len(args) + 1):
        for combo in itertools.combinations(args.elements, size):
            if len({tau(d, a) for a in combo}) == 1:
                candidates.append(AngleSet(combo))
    found: list[tuple[AngleSet, ...]] = []

    def extend(start: int, chosen: list[AngleSet], budget: int) -> None:
        if budget == 0:
            found.append(tuple(chosen))
            return
        for k in range(start, len(candidates)):
            b = candidates[k]
            if len(b) - 1 > budget:
                continue
            if all(unlinked(b, c) for c in chosen):
                chosen.append(b)
                extend(k + 1, chosen, budget - (len(b) - 1))
                chosen.pop()

    extend(0, [], delta - 1)
    return found


def enumerate_weak_julia_markings(
    d: int, julia_points: Sequence[tuple[AngleSet, int]]
) -> list[JuliaMarking]:
    """All weak Julia markings drawable from the given landing-angle sets.

    Each marking is a tuple of (point index, block). Output order is sorted and
    deterministic.
    """
    per_point = []
    for idx, (args, delta) in enumerate(julia_points):
        if delta < 2:
            raise ValueError(f"point {idx} has local degree {delta} < 2")
        fams = _families(d, AngleSet(args), delta)
        if not fams:
            raise EmptyEnumeration(f"point {idx} admits no block family from {AngleSet(args)!r}")
        per_point.append([tuple((idx, b) for b in fam) for fam in fams])
    out: list[JuliaMarking] = []
    for combo in itertools.product(*per_point):
        blocks = [entry for fam in combo for entry in fam]
        ok = all(
            unlinked(x[1], y[1])
            for x, y in itertools.combinations(blocks, 2)
            if x[0] != y[0]
        )
        if ok:
            out.append(tuple(blocks))
    return sorted(out, key=marking_key)


def marking_key(marking: JuliaMarking) -> tuple:
    return tuple((i, tuple(str(a) for a in b)) for i, b in marking)
