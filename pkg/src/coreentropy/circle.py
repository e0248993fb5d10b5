"""Exact arithmetic on the circle R/Z.

Angles are reduced fractions in [0, 1). Every cyclic-order predicate in this
module is decided by comparing fractions, never floats.
"""
from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

AngleLike = Union["Angle", Fraction, int, str]


@dataclass(frozen=True, order=True)
class Angle:
    """A rational angle, stored as its canonical residue mod 1."""

    value: Fraction

    def __post_init__(self) -> None:
        v = Fraction(self.value)
        object.__setattr__(self, "value", v - (v.numerator // v.denominator))

    @classmethod
    def parse(cls, text: str) -> "Angle":
        text = text.strip()
        if not text:
            raise ValueError("empty angle string")
        return cls(Fraction(text))

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __add__(self, other: AngleLike) -> "Angle":
        return Angle(self.value + as_angle(other).value)

    def __sub__(self, other: AngleLike) -> "Angle":
        return Angle(self.value - as_angle(other).value)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"Angle({self})"


def as_angle(x: AngleLike) -> Angle:
    if isinstance(x, Angle):
        return x
    if isinstance(x, str):
        return Angle.parse(x)
    if isinstance(x, float):
        raise TypeError("floating-point angles are not supported")
    return Angle(Fraction(x))


class AngleSet:
    """Finite set of angles kept in increasing canonical order."""

    __slots__ = ("_elements",)

    def __init__(self, elements: Iterable[AngleLike] = ()) -> None:
        self._elements: tuple[Angle, ...] = tuple(sorted({as_angle(e) for e in elements}))

    @property
    def elements(self) -> tuple[Angle, ...]:
        return self._elements

    def __iter__(self) -> Iterator[Angle]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, Angle):
            try:
                x = as_angle(x)  # type: ignore[arg-type]
            except (TypeError, ValueError):
                return False
        i = bisect.bisect_left(self._elements, x)
        return i < len(self._elements) and self._elements[i] == x

    def __getitem__(self, i: int) -> Angle:
        return self._elements[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AngleSet):
            return self._elements == other._elements
        return NotImplemented

    def __lt__(self, other: "AngleSet") -> bool:
        return self._elements < other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return "AngleSet({" + ", ".join(str(a) for a in self._elements) + "})"

    def to_strings(self) -> list[str]:
        return [str(a) for a in self._elements]


@dataclass(frozen=True)
class OrbitSummary:
    preperiod: int
    period: int
    points: tuple[Angle, ...]

    @property
    def cycle(self) -> tuple[Angle, ...]:
        return self.points[self.preperiod:]

    def at(self, n: int) -> Angle:
        """The n-th forward image, for any n >= 0."""
        if n < self.preperiod:
            return self.points[n]
        return self.points[self.preperiod + (n - self.preperiod) % self.period]

    @property
    def is_periodic(self) -> bool:
        return self.preperiod == 0


class SeparationVerdict(enum.Enum):
    SEPARATED = "Separated"
    SAME_SIDE = "SameSide"
    ON_BOUNDARY = "OnBoundary"


def tau(d: int, a: AngleLike) -> Angle:
    """Multiplication by d on the circle."""
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    return Angle(d * as_angle(a).value)


def tau_iter(d: int, a: AngleLike, n: int) -> Angle:
    a = as_angle(a)
    return Angle(pow(d, n) * a.value)


def preimages(d: int, a: AngleLike) -> tuple[Angle, ...]:
    """The d angles b with tau(d, b) == a, in increasing order."""
    v = as_angle(a).value
    return tuple(sorted(Angle((v + k) / d) for k in range(d)))


def orbit(d: int, a: AngleLike) -> OrbitSummary:
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    seen: dict[Angle, int] = {}
    points: list[Angle] = []
    x = as_angle(a)
    while x not in seen:
        seen[x] = len(points)
        points.append(x)
        x = tau(d, x)
    pre = seen[x]
    return OrbitSummary(preperiod=pre, period=len(points) - pre, points=tuple(points))


def circle_distance(s: AngleLike, t: AngleLike) -> Fraction:
    diff = abs(as_angle(s).value - as_angle(t).value)
    return min(diff, 1 - diff)


def arc_length(start: AngleLike, end: AngleLike) -> Fraction:
    """Length of the counterclockwise arc from start to end (0 when equal)."""
    return (as_angle(end).value - as_angle(start).value) % 1


def in_open_arc(x: AngleLike, start: AngleLike, end: AngleLike) -> bool:
    """True when x lies strictly inside the counterclockwise arc (start, end).

    An arc with start == end is the whole circle minus that point.
    """
    x, start, end = as_angle(x), as_angle(start), as_angle(end)
    if x == start:
        return False
    if start == end:
        return True
    return arc_length(start, x) < arc_length(start, end)


def component_index(hull: Sequence[Angle], x: Angle) -> int | None:
    """Index of the component of T minus hull containing x, or None if x is in hull.

    Component i is the open arc (hull[i-1], hull[i]); component 0 wraps through 0.
    """
    i = bisect.bisect_left(hull, x)
    if i < len(hull) and hull[i] == x:
        return None
    return i % len(hull)


def separation(hull: AngleSet, x: AngleLike, y: AngleLike) -> SeparationVerdict:
    x, y = as_angle(x), as_angle(y)
    if len(hull) < 2:
        raise ValueError("hull needs at least two angles")
    if x == y:
        raise ValueError("separation needs two distinct angles")
    cx = component_index(hull.elements, x)
    cy = component_index(hull.elements, y)
    if cx is None or cy is None:
        return SeparationVerdict.ON_BOUNDARY
    return SeparationVerdict.SAME_SIDE if cx == cy else SeparationVerdict.SEPARATED


def hulls_meet_at_most_once(a_keys: Iterable, b_keys: Iterable, *, allow_touch: bool = True) -> bool:
    """Convex hulls of two finite circle sets meet in at most one boundary point.

    Keys are any totally ordered representatives of points on the circle, read
    cyclically. With allow_touch=False the hulls must be disjoint.
    """
    a, b = set(a_keys), set(b_keys)
    common = a & b
    if len(common) > (1 if allow_touch else 0):
        return False
    labels = []
    for k in sorted(a | b):
        labels.append("X" if k in common else ("A" if k in a else "B"))
    if common:
        i = labels.index("X")
        seq = labels[i + 1:] + labels[:i]
        # after the shared point: one run of A and one run of B, in either order
        changes = sum(1 for u, v in zip(seq, seq[1:]) if u != v)
        return changes <= 1
    if not labels:
        return True
    changes = sum(1 for u, v in zip(labels, labels[1:] + labels[:1]) if u != v)
    return changes <= 2


def unlinked(hull_a: AngleSet, hull_b: AngleSet) -> bool:
    if not len(hull_a) or not len(hull_b):
        raise ValueError("unlinked needs nonempty angle sets")
    return hulls_meet_at_most_once(hull_a.elements, hull_b.elements)


def hausdorff_distance(a: AngleSet, b: AngleSet) -> Fraction:
    if not len(a) or not len(b):
        raise ValueError("hausdorff_distance needs nonempty angle sets")

    def directed(src: AngleSet, dst: AngleSet) -> Fraction:
        return max(min(circle_distance(s, t) for t in dst) for s in src)

    return max(directed(a, b), directed(b, a))
