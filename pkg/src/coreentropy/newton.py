"""Postcritically-finite Newton maps described by their renormalizations.

The straightening map is not computed: a description lists the periods and
polynomial models of the renormalization components, and optionally a tagged
extended Newton graph.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InvalidSystem, ModelError, NotGeneric, NumericFailure, TooManyComponents, ValidationFailed
from .hubbard import (
    Model,
    Verdict,
    decide,
    model_entropy,
    model_has_julia_critical,
    model_mu,
)
from .markov import DEFAULT_TOLERANCE, EntropyValue, MarkovSystem, check_system, invariant_split

MULTIPLIER_STEP = 1e-6
MULTIPLIER_TOLERANCE = 1e-6


class EdgeTag(enum.Enum):
    DELTA = "Delta"
    RAY = "Ray"
    FOREST = "Forest"


# tag -> tags its edges may cover
ALLOWED_IMAGES = {
    EdgeTag.DELTA: {EdgeTag.DELTA},
    EdgeTag.RAY: {EdgeTag.RAY, EdgeTag.DELTA},
    EdgeTag.FOREST: {EdgeTag.FOREST},
}


@dataclass(frozen=True)
class RenormComponent:
    period: int
    model: Model


@dataclass(frozen=True)
class NewtonDescription:
    degree: int
    multiplicities: tuple[int, ...]
    roots: tuple[complex, ...] | None = None
    extended_graph: MarkovSystem | None = None
    edge_tags: Mapping = field(default_factory=dict)
    renorm_components: tuple[RenormComponent, ...] = ()
    generic: bool = True


def newton_report(spec: NewtonDescription) -> list[dict]:
    report: list[dict] = []

    def bad(check: str, message: str) -> None:
        report.append({"check": check, "message": message})

    if spec.degree < 3:
        bad("degree", f"degree must be >= 3, got {spec.degree}")
    if len(spec.multiplicities) != spec.degree:
        bad("multiplicities", f"{spec.degree} multiplicities required, got {len(spec.multiplicities)}")
    if any(not isinstance(n, int) or n < 1 for n in spec.multiplicities):
        bad("multiplicities", "multiplicities must be positive integers")
    if spec.roots is not None:
        if len(spec.roots) != len(spec.multiplicities):
            bad("roots", "one root per multiplicity required")
        for i, a in enumerate(spec.roots):
            for j in range(i):
                if spec.roots[j] == a:
                    bad("roots", f"roots {j} and {i} coincide")
    for i, c in enumerate(spec.renorm_components):
        if not isinstance(c.period, int) or c.period < 1:
            bad("renorm_components", f"component {i} has period {c.period}; must be >= 1")
    g = spec.extended_graph
    if g is not None:
        try:
            check_system(g)
        except InvalidSystem as exc:
            bad("extended_graph", str(exc))
            return report
        tags = {}
        for e in g.edge_ids:
            t = spec.edge_tags.get(e)
            if t is None:
                bad("edge_tags", f"edge {e!r} has no tag")
                continue
            tags[e] = EdgeTag(t)
        for e, t in tags.items():
            for x in g.edge_cover[e]:
                if x in tags and tags[x] not in ALLOWED_IMAGES[t]:
                    bad("edge_tags", f"{t.value} edge {e!r} covers {tags[x].value} edge {x!r}")
    return report


def validate_newton(spec: NewtonDescription) -> NewtonDescription:
    report = newton_report(spec)
    if report:
        raise ValidationFailed("Newton description", report)
    return spec


# -- multipliers ----------------------------------------------------------------

def newton_map(roots: Sequence[complex], multiplicities: Sequence[int]):
    """f(z) = z - P(z)/P'(z) written through the logarithmic derivative."""

    def f(z: complex) -> complex:
        s = 0j
        for a, n in zip(roots, multiplicities):
            if z == a:
                return a
            s += n / (z - a)
        if s == 0:
            raise NumericFailure(f"P'/P vanishes at {z}")
        return z - 1 / s

    return f


def _derivative(g, z: complex, h: float = MULTIPLIER_STEP) -> complex:
    return (g(z + h) - g(z - h)) / (2 * h)


def multiplier_check(roots: Sequence[complex], multiplicities: Sequence[int]) -> dict:
    """Compare numeric multipliers with (n-1)/n at each root and N/(N-1) at infinity."""
    if len(roots) != len(multiplicities):
        raise ValueError("one multiplicity per root required")
    f = newton_map(roots, multiplicities)
    scale = max([1.0] + [abs(a) for a in roots])
    for i, a in enumerate(roots):
        for b in roots[:i]:
            if abs(a - b) < 100 * MULTIPLIER_STEP * scale:
                raise NumericFailure(f"roots {b} and {a} are too close for the finite-difference step")
    rows = []
    for a, n in zip(roots, multiplicities):
        got = _derivative(f, complex(a))
        want = (n - 1) / n
        rows.append({"root": complex(a), "multiplicity": n, "multiplier": got,
                     "expected": want, "deviation": abs(got - want)})

    def g(w: complex) -> complex:
        if w == 0:
            return 0j
        return 1 / f(1 / w)

    total = sum(multiplicities)
    got_inf = _derivative(g, 0j)
    want_inf = total / (total - 1)
    dev_inf = abs(got_inf - want_inf)
    passed = all(r["deviation"] < MULTIPLIER_TOLERANCE for r in rows) and dev_inf < MULTIPLIER_TOLERANCE
    return {
        "roots": rows,
        "infinity": {"multiplier": got_inf, "expected": want_inf, "deviation": dev_inf},
        "passed": passed,
    }


# -- entropy --------------------------------------------------------------------

@dataclass(frozen=True)
class ExtendedGraphReport:
    full: EntropyValue
    forest: EntropyValue
    delta_ray: EntropyValue
    well_defined: bool


def extended_graph_entropy(spec: NewtonDescription, tolerance: float = DEFAULT_TOLERANCE) -> ExtendedGraphReport:
    """Entropy of the whole graph against its Forest block."""
    g = spec.extended_graph
    if g is None:
        raise ValueError("description has no extended graph")
    tags = {e: EdgeTag(spec.edge_tags[e]) for e in g.edges}
    forest = [e for e in g.edge_ids if tags[e] is EdgeTag.FOREST]
    rest = [e for e in g.edge_ids if tags[e] is not EdgeTag.FOREST]
    split = invariant_split(g, [rest, forest])
    delta_ray, fo = split.parts
    ok = abs(split.whole.value - fo.value) <= tolerance
    return ExtendedGraphReport(split.whole, fo, delta_ray, ok)


def _component_entropies(spec: NewtonDescription) -> list[EntropyValue]:
    return [model_entropy(c.model).scaled(1.0 / c.period) for c in spec.renorm_components]


def newton_core_entropy(spec: NewtonDescription) -> EntropyValue:
    """Max over renormalization components of h(P)/p; zero when there are none."""
    values = _component_entropies(spec)
    if not values:
        return EntropyValue.zero()
    best = 0
    for i, v in enumerate(values):
        if v.value > values[best].value:
            best = i
    return values[best]


@dataclass(frozen=True)
class NewtonVerdict:
    h: EntropyValue
    verdict: Verdict
    maximal_components: tuple[int, ...]
    per_component: tuple[dict, ...]


def _maximal(values: list[EntropyValue], tolerance: float) -> tuple[int, ...]:
    if not values:
        return ()
    top = max(v.value for v in values)
    return tuple(i for i, v in enumerate(values) if v.value >= top - tolerance)


def newton_continuity_verdict(spec: NewtonDescription, tolerance: float = DEFAULT_TOLERANCE) -> NewtonVerdict:
    """Continuous iff non-renormalizable or some entropy-maximal P has h(P) = mu(P)."""
    if not spec.generic:
        raise NotGeneric("continuity is only decided for generic Newton maps")
    validate_newton(spec)
    values = _component_entropies(spec)
    h = newton_core_entropy(spec)
    maximal = _maximal(values, tolerance)
    rows = []
    verdict = Verdict.CONTINUOUS if not maximal else Verdict.DISCONTINUOUS
    for i, c in enumerate(spec.renorm_components):
        hp = model_entropy(c.model)
        row = {"h": hp.value, "mu": None, "period": c.period}
        if i in maximal:
            m, _ = model_mu(c.model)
            row["mu"] = m.value
            if decide(hp, m, tolerance) is Verdict.CONTINUOUS:
                verdict = Verdict.CONTINUOUS
        rows.append(row)
    return NewtonVerdict(h, verdict, maximal, tuple(rows))


def cubic_verdict(spec: NewtonDescription) -> NewtonVerdict:
    """Cubic case: continuous iff non-renormalizable or hyperbolic."""
    if spec.degree != 3:
        raise ValueError("cubic_verdict needs degree 3")
    if len(spec.renorm_components) > 1:
        raise TooManyComponents(f"a cubic Newton map has at most one renormalization, got {len(spec.renorm_components)}")
    h = newton_core_entropy(spec)
    if not spec.renorm_components:
        return NewtonVerdict(h, Verdict.CONTINUOUS, (), ())
    c = spec.renorm_components[0]
    hyperbolic = not model_has_julia_critical(c.model)
    row = {"h": model_entropy(c.model).value, "mu": None, "period": c.period, "hyperbolic": hyperbolic}
    try:
        row["mu"] = model_mu(c.model)[0].value
    except ModelError:
        pass
    return NewtonVerdict(h, Verdict.CONTINUOUS if hyperbolic else Verdict.DISCONTINUOUS, (0,), (row,))

