"""Hand-built models used by the tests, the acceptance run and the CLI examples.

Tree models follow the real slices of the named quadratics; Fatou centers carry
the angles of rays landing on the boundary of their components.
"""
from __future__ import annotations

from fractions import Fraction

from .circle import Angle, AngleSet
from .hubbard import HubbardForest, Vertex, VertexKind
from .markov import MarkovSystem
from .newton import NewtonDescription, RenormComponent
from .portrait import CriticalMarking, CriticalPortrait, Role, validate_portrait
from .scan import ScanSpec

F, J = VertexKind.FATOU, VertexKind.JULIA


def _v(vid, kind, angles=(), ld=1, critical=False, postcritical=False) -> Vertex:
    return Vertex(vid, kind, AngleSet(Angle.parse(a) for a in angles), ld, critical, postcritical)


def _forest(degree, vertices, edges, vmap, covers, components=None, portrait=None) -> HubbardForest:
    ids = [v.id for v in vertices]
    system = MarkovSystem.build(ids, edges, vmap, covers)
    comps = components if components is not None else ([ids] if ids else [])
    return HubbardForest(degree, tuple(vertices), tuple(tuple(c) for c in comps), system, portrait)


def portrait(d: int, *blocks) -> CriticalPortrait:
    return validate_portrait(d, [[Angle.parse(a) for a in b] for b in blocks])


# -- quadratic portraits --------------------------------------------------------

def chebyshev_portrait() -> CriticalPortrait:
    return portrait(2, ("1/4", "3/4"))


def airplane_portrait() -> CriticalPortrait:
    return portrait(2, ("3/14", "5/7"))


def rabbit_portrait() -> CriticalPortrait:
    return portrait(2, ("1/14", "4/7"))


def basilica_portrait() -> CriticalPortrait:
    return portrait(2, ("1/6", "2/3"))


def z2_plus_i_portrait() -> CriticalPortrait:
    return portrait(2, ("1/12", "7/12"))


def cubic_two_block_portrait() -> CriticalPortrait:
    """Two blocks sharing the angle 1/3."""
    return portrait(3, ("0", "1/3"), ("1/3", "2/3"))


def quintic_two_block_portrait() -> CriticalPortrait:
    return portrait(5, ("0", "1/5", "2/5"), ("1/2", "7/10", "9/10"))


# -- trees ----------------------------------------------------------------------

def chebyshev_tree() -> HubbardForest:
    """z^2 - 2 on [-2, 2]; the critical point is Julia."""
    vs = [
        _v("-2", J, ["1/2"], postcritical=True),
        _v("0", J, ["1/4", "3/4"], ld=2, critical=True),
        _v("2", J, ["0"], postcritical=True),
    ]
    edges = {"A": ("-2", "0"), "B": ("0", "2")}
    vmap = {"-2": "2", "0": "-2", "2": "2"}
    covers = {"A": ("B", "A"), "B": ("A", "B")}
    return _forest(2, vs, edges, vmap, covers, portrait=chebyshev_portrait())


def airplane_tree() -> HubbardForest:
    """Period-3 real critical orbit c1 < c0 < c2."""
    vs = [
        _v("c1", F, ["3/7", "4/7"], postcritical=True),
        _v("c0", F, ["3/14", "2/7", "5/7", "11/14"], ld=2, critical=True, postcritical=True),
        _v("c2", F, ["1/7", "6/7"], postcritical=True),
    ]
    edges = {"A": ("c1", "c0"), "B": ("c0", "c2")}
    vmap = {"c0": "c1", "c1": "c2", "c2": "c0"}
    covers = {"A": ("B", "A"), "B": ("A",)}
    return _forest(2, vs, edges, vmap, covers, portrait=airplane_portrait())


def rabbit_tree() -> HubbardForest:
    """Tripod at the fixed point alpha, legs permuted."""
    vs = [
        _v("alpha", J, ["1/7", "2/7", "4/7"]),
        _v("c0", F, ["1/14", "1/7", "4/7", "9/14"], ld=2, critical=True, postcritical=True),
        _v("c1", F, ["1/7", "2/7"], postcritical=True),
        _v("c2", F, ["2/7", "4/7"], postcritical=True),
    ]
    edges = {"E0": ("alpha", "c0"), "E1": ("alpha", "c1"), "E2": ("alpha", "c2")}
    vmap = {"alpha": "alpha", "c0": "c1", "c1": "c2", "c2": "c0"}
    covers = {"E0": ("E1",), "E1": ("E2",), "E2": ("E0",)}
    return _forest(2, vs, edges, vmap, covers, portrait=rabbit_portrait())


def basilica_tree() -> HubbardForest:
    """Segment [-1, 0] through alpha; the two halves swap."""
    vs = [
        _v("c1", F, ["1/3", "2/3"], postcritical=True),
        _v("alpha", J, ["1/3", "2/3"]),
        _v("c0", F, ["1/6", "1/3", "2/3", "5/6"], ld=2, critical=True, postcritical=True),
    ]
    edges = {"A": ("c1", "alpha"), "B": ("alpha", "c0")}
    vmap = {"c1": "c0", "alpha": "alpha", "c0": "c1"}
    covers = {"A": ("B",), "B": ("A",)}
    return _forest(2, vs, edges, vmap, covers, portrait=basilica_portrait())


def empty_forest(degree: int = 2) -> HubbardForest:
    return _forest(degree, [], {}, {}, {})


def trivial_component() -> HubbardForest:
    """z^2: one fixed critical Fatou center, no edges."""
    return _forest(2, [_v("z", F, ["0"], ld=2, critical=True, postcritical=True)], {}, {"z": "z"}, {})


def two_end_forest() -> HubbardForest:
    """Degree 4: fixed Fatou centers u and w on opposite sides of the Julia cut at c."""
    vs = [
        _v("beta", J, ["0", "1/2"], postcritical=True),
        _v("u", F, ["2/3"], ld=2, critical=True, postcritical=True),
        _v("c", J, ["1/8", "3/8"], ld=2, critical=True),
        _v("w", F, ["1/3"], ld=2, critical=True, postcritical=True),
    ]
    edges = {"a": ("beta", "u"), "b": ("u", "c"), "g": ("c", "w")}
    vmap = {"beta": "beta", "u": "u", "c": "beta", "w": "w"}
    covers = {"a": ("a",), "b": ("a",), "g": ("a", "b", "g")}
    return _forest(4, vs, edges, vmap, covers)


def period_two_pair() -> HubbardForest:
    """Two segments swapped by f; the return map folds like z^2 - 2."""
    vs = [
        _v("a0", J, ["1/2"], postcritical=True),
        _v("a1", J, ["1/8", "3/8"]),
        _v("a2", J, ["0"], postcritical=True),
        _v("b0", J, ["0"]),
        _v("b1", J, ["1/4", "3/4"], ld=2, critical=True),
        _v("b2", J, ["0"], postcritical=True),
    ]
    edges = {"A1": ("a0", "a1"), "B1": ("a1", "a2"), "A2": ("b0", "b1"), "B2": ("b1", "b2")}
    vmap = {"a0": "b0", "a1": "b1", "a2": "b2", "b0": "a2", "b1": "a0", "b2": "a2"}
    covers = {"A1": ("A2",), "B1": ("B2",), "A2": ("B1", "A1"), "B2": ("A1", "B1")}
    return _forest(2, vs, edges, vmap, covers, components=[["a0", "a1", "a2"], ["b0", "b1", "b2"]])


def chebyshev_fatou_variant() -> CriticalMarking:
    """Synthetic: the Chebyshev portrait with its block marked Fatou, so mu = h = log 2."""
    return CriticalMarking(chebyshev_portrait(), (Role.FATOU,))


def fig3_marking() -> CriticalMarking:
    return CriticalMarking(cubic_two_block_portrait(), (Role.FATOU, Role.JULIA), (Angle(Fraction(0)), None))


# -- Newton maps ----------------------------------------------------------------

def newton_extended_graph() -> tuple[MarkovSystem, dict]:
    """A Delta loop through infinity, two preperiodic Ray edges and the airplane forest."""
    edges = {
        "D1": ("inf", "r0"), "D2": ("r0", "inf"),
        "R": ("x", "inf"), "R2": ("y", "inf"),
        "A": ("c1", "c0"), "B": ("c0", "c2"),
    }
    vmap = {"inf": "inf", "r0": "r0", "x": "r0", "y": "x", "c0": "c1", "c1": "c2", "c2": "c0"}
    covers = {"D1": ("D1",), "D2": ("D2",), "R": ("D2",), "R2": ("R",), "A": ("B", "A"), "B": ("A",)}
    tags = {"D1": "Delta", "D2": "Delta", "R": "Ray", "R2": "Ray", "A": "Forest", "B": "Forest"}
    verts = ["inf", "r0", "x", "y", "c0", "c1", "c2"]
    return MarkovSystem.build(verts, edges, vmap, covers), tags


def newton(components=(), *, degree=3, generic=True, graph=False, roots=None) -> NewtonDescription:
    g, tags = newton_extended_graph() if graph else (None, {})
    return NewtonDescription(
        degree, (1,) * degree, roots, g, tags,
        tuple(RenormComponent(p, m) for p, m in components), generic,
    )


def newton_z3_minus_z() -> NewtonDescription:
    return newton(roots=(0j, 1 + 0j, -1 + 0j))


# -- scans ----------------------------------------------------------------------

def airplane_scan() -> ScanSpec:
    return ScanSpec(airplane_portrait(), Angle(Fraction(3, 7)), Fraction(1, 7), 2, 1, 1, 12, 0.05)


def chebyshev_scan() -> ScanSpec:
    return ScanSpec(chebyshev_portrait(), Angle(Fraction(1, 2)), Fraction(1, 2), 2, 1, 1, 12, 0.05)


TREES = {
    "chebyshev": (chebyshev_portrait, chebyshev_tree),
    "airplane": (airplane_portrait, airplane_tree),
    "rabbit": (rabbit_portrait, rabbit_tree),
    "basilica": (basilica_portrait, basilica_tree),
}


def documents() -> dict[str, dict]:
    """JSON documents shipped under data/, keyed by file stem."""
    from . import jsonio

    docs: dict[str, dict] = {}
    for name, (p, t) in TREES.items():
        docs[f"{name}_portrait"] = jsonio.portrait_to_json(p())
        docs[f"{name}_tree"] = jsonio.forest_to_json(t())
    docs["z2_plus_i_portrait"] = jsonio.portrait_to_json(z2_plus_i_portrait())
    docs["fig3_marking"] = jsonio.portrait_to_json(fig3_marking())
    docs["quintic_portrait"] = jsonio.portrait_to_json(quintic_two_block_portrait())
    docs["bad_portrait"] = {"degree": 2, "blocks": [["1/4", "1/2"]]}
    docs["two_end_forest"] = jsonio.forest_to_json(two_end_forest())
    docs["period_two_pair"] = jsonio.forest_to_json(period_two_pair())
    docs["ppf_basilica_trivial"] = {"renormalizations": [
        {"period": 2, "model_kind": "forest", "model": jsonio.forest_to_json(basilica_tree())},
        {"period": 1, "model_kind": "forest", "model": jsonio.forest_to_json(trivial_component())},
    ]}
    docs["newton_airplane_p2"] = jsonio.newton_to_json(newton([(2, airplane_portrait())], graph=True))
    docs["newton_z3_minus_z"] = jsonio.newton_to_json(newton_z3_minus_z())
    docs["newton_chebyshev"] = jsonio.newton_to_json(newton([(1, chebyshev_tree())]))
    docs["newton_chebyshev_pair"] = jsonio.newton_to_json(
        newton([(1, chebyshev_tree()), (1, chebyshev_fatou_variant())]))
    docs["newton_cubic_basilica"] = jsonio.newton_to_json(newton([(2, basilica_tree())]))
    docs["airplane_scan"] = jsonio.scan_to_json(airplane_scan())
    docs["chebyshev_scan"] = jsonio.scan_to_json(chebyshev_scan())
    return docs


def write_documents(directory) -> list:
    from pathlib import Path

    from . import jsonio

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in sorted(documents().items()):
        path = directory / f"{name}.json"
        path.write_text(jsonio.dumps(doc), encoding="utf-8")
        written.append(path)
    return written
