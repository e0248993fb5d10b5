"""JSON readers and writers for every input kind.

Angles travel as "p/q" strings, complex roots as "re,im" strings. Writers emit
sorted keys so serializations are byte-stable.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .circle import Angle, AngleSet
from .hubbard import HubbardForest, Vertex, VertexKind
from .markov import MarkovSystem
from .newton import NewtonDescription, RenormComponent
from .portrait import CriticalMarking, CriticalPortrait, Role, validate_portrait


class ParseError(ValueError):
    """Malformed JSON document (as opposed to a well-formed but invalid object)."""


def _need(doc: dict, key: str) -> Any:
    try:
        return doc[key]
    except (KeyError, TypeError):
        raise ParseError(f"missing field {key!r}") from None


def _angles(items) -> AngleSet:
    try:
        return AngleSet(Angle.parse(str(x)) for x in items)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad angle list {items!r}: {exc}") from None


# -- portraits ----------------------------------------------------------------

def portrait_from_json(doc: dict, *, validate: bool = True):
    """A CriticalPortrait, or a CriticalMarking when blocks carry roles.

    Blocks are objects {"angles": [...], "role": ..., "preferred": ...}; a bare
    list of angle strings is accepted as shorthand.
    """
    d = _need(doc, "degree")
    if not isinstance(d, int):
        raise ParseError("degree must be an integer")
    raw = _need(doc, "blocks")
    if not isinstance(raw, list):
        raise ParseError("blocks must be a list")
    rows = [b if isinstance(b, dict) else {"angles": b} for b in raw]
    blocks = tuple(_angles(_need(b, "angles")) for b in rows)
    portrait = validate_portrait(d, blocks) if validate else CriticalPortrait(d, blocks)
    if not any("role" in b for b in rows):
        return portrait
    try:
        roles = tuple(Role(_need(b, "role")) for b in rows)
        pref = tuple(None if b.get("preferred") is None else Angle.parse(b["preferred"]) for b in rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return CriticalMarking(portrait, roles, pref)


def portrait_to_json(obj) -> dict:
    if isinstance(obj, CriticalMarking):
        out = portrait_to_json(obj.portrait)
        for row, role, pref in zip(out["blocks"], obj.roles, obj.preferred):
            row["role"] = role.value
            if pref is not None:
                row["preferred"] = str(pref)
        return out
    return {"degree": obj.degree, "blocks": [{"angles": b.to_strings()} for b in obj.blocks]}


# -- Markov systems -----------------------------------------------------------

def markov_from_json(doc: dict) -> MarkovSystem:
    edges = _need(doc, "edges")
    try:
        if isinstance(edges, list):
            pairs = {_need(r, "id"): (_need(r, "from"), _need(r, "to")) for r in edges}
        else:  # shorthand {id: [from, to]}
            pairs = {e: (u, v) for e, (u, v) in edges.items()}
    except (AttributeError, ValueError, TypeError):
        raise ParseError("edges must be a list of {id, from, to}") from None
    return MarkovSystem.build(_need(doc, "vertices"), pairs, _need(doc, "vertex_map"), _need(doc, "edge_cover"))


def markov_to_json(s: MarkovSystem) -> dict:
    return {
        "vertices": list(s.vertices),
        "edges": [{"id": e, "from": s.edges[e][0], "to": s.edges[e][1]} for e in s.edge_ids],
        "vertex_map": {v: s.vertex_map[v] for v in s.vertices},
        "edge_cover": {e: list(s.edge_cover[e]) for e in s.edge_ids},
    }


# -- forests ------------------------------------------------------------------

def forest_from_json(doc: dict) -> HubbardForest:
    vertices = []
    for v in _need(doc, "vertices"):
        try:
            kind = VertexKind(_need(v, "kind"))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        vertices.append(Vertex(
            _need(v, "id"), kind, _angles(v.get("angles", [])),
            int(v.get("local_degree", 1)), bool(v.get("critical", False)), bool(v.get("postcritical", False)),
        ))
    system = markov_from_json({**doc, "vertices": [v.id for v in vertices]})
    comps = doc.get("components")
    if comps is None:
        comps = [[v.id for v in vertices]] if vertices else []
    portrait = None
    if doc.get("portrait") is not None:
        p = portrait_from_json(doc["portrait"])
        portrait = p.portrait if isinstance(p, CriticalMarking) else p
    return HubbardForest(_need(doc, "degree"), tuple(vertices), tuple(tuple(c) for c in comps), system, portrait)


def forest_to_json(f: HubbardForest) -> dict:
    out = {"degree": f.degree}
    out["vertices"] = [
        {"id": v.id, "kind": v.kind.value, "angles": v.angles.to_strings(), "local_degree": v.local_degree,
         "critical": v.critical, "postcritical": v.postcritical}
        for v in f.vertices
    ]
    m = markov_to_json(f.system)
    out.update(edges=m["edges"], vertex_map=m["vertex_map"], edge_cover=m["edge_cover"])
    out["components"] = [list(c) for c in f.components]
    if f.portrait is not None:
        out["portrait"] = portrait_to_json(f.portrait)
    return out


# -- Newton descriptions ------------------------------------------------------

def _complex(text: str) -> complex:
    try:
        re_, im = str(text).split(",")
        return complex(float(re_), float(im))
    except ValueError:
        raise ParseError(f"bad complex number {text!r}; expected 're,im'") from None


def _fmt_complex(z: complex) -> str:
    return f"{z.real!r},{z.imag!r}"


def model_from_json(kind: str, doc: dict):
    if kind == "forest":
        return forest_from_json(doc)
    if kind == "portrait":
        return portrait_from_json(doc)
    raise ParseError(f"unknown model_kind {kind!r}")


def model_to_json(model) -> tuple[str, dict]:
    if isinstance(model, HubbardForest):
        return "forest", forest_to_json(model)
    return "portrait", portrait_to_json(model)


def newton_from_json(doc: dict) -> NewtonDescription:
    roots = doc.get("roots")
    graph = doc.get("extended_graph")
    comps = []
    for c in doc.get("renorm_components", []):
        comps.append(RenormComponent(_need(c, "period"), model_from_json(_need(c, "model_kind"), _need(c, "model"))))
    return NewtonDescription(
        degree=_need(doc, "degree"),
        multiplicities=tuple(_need(doc, "multiplicities")),
        roots=None if roots is None else tuple(_complex(r) for r in roots),
        extended_graph=None if graph is None else markov_from_json(graph),
        edge_tags={} if graph is None else dict(graph.get("edge_tags", {})),
        renorm_components=tuple(comps),
        generic=bool(doc.get("generic", True)),
    )


def newton_to_json(spec: NewtonDescription) -> dict:
    out: dict = {"degree": spec.degree, "multiplicities": list(spec.multiplicities), "generic": spec.generic}
    if spec.roots is not None:
        out["roots"] = [_fmt_complex(z) for z in spec.roots]
    if spec.extended_graph is not None:
        g = markov_to_json(spec.extended_graph)
        g["edge_tags"] = {e: spec.edge_tags[e] for e in spec.extended_graph.edge_ids if e in spec.edge_tags}
        out["extended_graph"] = g
    rows = []
    for c in spec.renorm_components:
        kind, model = model_to_json(c.model)
        rows.append({"period": c.period, "model_kind": kind, "model": model})
    out["renorm_components"] = rows
    return out


# -- files --------------------------------------------------------------------

def load(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- scans --------------------------------------------------------------------

def scan_from_json(doc: dict):
    from .scan import ScanSpec

    target = portrait_from_json(_need(doc, "target"))
    if isinstance(target, CriticalMarking):
        target = target.portrait
    n_start, n_stop = _need(doc, "n")
    try:
        return ScanSpec(
            target, Angle.parse(str(_need(doc, "base"))), Fraction(str(_need(doc, "offset"))),
            int(doc.get("ratio", 2)), int(doc.get("sign", 1)), int(n_start), int(n_stop),
            float(doc.get("tolerance", 0.05)),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad scan spec: {exc}") from None


def scan_to_json(spec) -> dict:
    return {
        "target": portrait_to_json(spec.target),
        "base": str(spec.base),
        "offset": f"{spec.offset.numerator}/{spec.offset.denominator}",
        "ratio": spec.ratio,
        "sign": spec.sign,
        "n": [spec.n_start, spec.n_stop],
        "tolerance": spec.tolerance,
    }
