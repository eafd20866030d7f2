"""JSON interchange for all structures the command line consumes and emits.

Every emitted document carries a schema_version field.  Input documents may
omit derivable data: diagram identity arrows are added automatically and
missing composite arrows are filled in from shorter ones when that is
unambiguous by functoriality.
"""

from __future__ import annotations

import json
from typing import Any

from .base import BaseMorphism, BaseObject, compose
from .category import FinCategory
from .cofinalize import CofinalTower, OverCategoryReport
from .diagrams import Diagram, NatTrans
from .factorize import ArrowPreMorphism, ChiMap, ReedyFactorization
from .lifting import ConeLift, LiftingProblem
from .poset import FinPoset
from .procalc import PreMorphism, ProObject, RawMorphism

SCHEMA_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, path: str = "$") -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


def dumps(payload: dict[str, Any]) -> str:
    payload = dict(payload)
    payload.setdefault("schema_version", SCHEMA_VERSION)
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _require(data: Any, key: str, path: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"missing key {key!r}", path)
    return data[key]


def poset_to_json(poset: FinPoset) -> dict:
    return {
        "elements": list(poset.elements),
        "le": sorted([x, y] for x, y in poset.le_pairs if x != y),
    }


def poset_from_json(data: Any, path: str = "$") -> FinPoset:
    elements = _require(data, "elements", path)
    pairs = data.get("le", [])
    try:
        return FinPoset.make(elements, [tuple(p) for p in pairs])
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), path) from exc


def object_to_json(obj: BaseObject) -> list:
    return list(obj.carrier)


def object_from_json(data: Any, path: str = "$") -> BaseObject:
    if not isinstance(data, list):
        raise ParseError("expected a list of element ids", path)
    try:
        return BaseObject(tuple(data))
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def morphism_to_json(f: BaseMorphism) -> dict:
    return {"source": list(f.source.carrier), "target": list(f.target.carrier), "map": dict(f.mapping)}


def morphism_from_json(data: Any, path: str = "$") -> BaseMorphism:
    source = object_from_json(_require(data, "source", path), path + ".source")
    target = object_from_json(_require(data, "target", path), path + ".target")
    mapping = _require(data, "map", path)
    try:
        return BaseMorphism(source, target, dict(mapping))
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), path + ".map") from exc


def _component_morphism(
    source: BaseObject, target: BaseObject, mapping: Any, path: str
) -> BaseMorphism:
    if not isinstance(mapping, dict):
        raise ParseError("expected an assignment object", path)
    try:
        return BaseMorphism(source, target, dict(mapping))
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def diagram_to_json(diagram: Diagram) -> dict:
    return {
        "poset": poset_to_json(diagram.shape),
        "objects": {x: list(diagram.at(x).carrier) for x in diagram.shape.elements},
        "arrows": [
            {"from": x, "to": y, "map": dict(diagram.arrow(x, y).mapping)}
            for x in diagram.shape.elements
            for y in diagram.shape.elements
            if diagram.shape.lt(y, x)
        ],
    }


def diagram_from_json(data: Any, path: str = "$") -> Diagram:
    shape = poset_from_json(_require(data, "poset", path), path + ".poset")
    raw_objects = _require(data, "objects", path)
    objects = {
        x: object_from_json(_require(raw_objects, x, path + ".objects"), f"{path}.objects.{x}")
        for x in shape.elements
    }
    arrows: dict[tuple[str, str], BaseMorphism] = {}
    for i, entry in enumerate(data.get("arrows", [])):
        apath = f"{path}.arrows[{i}]"
        x, y = _require(entry, "from", apath), _require(entry, "to", apath)
        if x not in shape or y not in shape or not shape.lt(y, x):
            raise ParseError(f"arrow over non-strict pair ({x!r}, {y!r})", apath)
        arrows[(x, y)] = _component_morphism(objects[x], objects[y], _require(entry, "map", apath), apath + ".map")
    # fill in derivable composites so inputs can list covering arrows only
    changed = True
    while changed:
        changed = False
        for x in shape.elements:
            for y in shape.elements:
                if shape.lt(y, x) and (x, y) not in arrows:
                    for z in shape.elements:
                        if shape.lt(z, x) and shape.lt(y, z) and (x, z) in arrows and (z, y) in arrows:
                            arrows[(x, y)] = compose(arrows[(z, y)], arrows[(x, z)])
                            changed = True
                            break
    try:
        return Diagram.make(shape, objects, arrows)
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def nattrans_to_json(nt: NatTrans) -> dict:
    return {
        "source": diagram_to_json(nt.source),
        "target": diagram_to_json(nt.target),
        "components": {x: dict(nt.at(x).mapping) for x in nt.shape.elements},
    }


def nattrans_from_json(data: Any, path: str = "$") -> NatTrans:
    source = diagram_from_json(_require(data, "source", path), path + ".source")
    target = diagram_from_json(_require(data, "target", path), path + ".target")
    raw = _require(data, "components", path)
    components = {
        x: _component_morphism(
            source.at(x), target.at(x), _require(raw, x, path + ".components"), f"{path}.components.{x}"
        )
        for x in source.shape.elements
    }
    try:
        return NatTrans.make(source, target, components)
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def category_to_json(cat: FinCategory) -> dict:
    return {
        "objects": list(cat.objects),
        "morphisms": list(cat.morphisms),
        "src": dict(cat.src),
        "tgt": dict(cat.tgt),
        "compose": sorted([g, f, h] for (g, f), h in cat.compose_table.items()),
        "identities": dict(cat.identities),
    }


def category_from_json(data: Any, path: str = "$") -> FinCategory:
    try:
        return FinCategory.make(
            _require(data, "objects", path),
            _require(data, "morphisms", path),
            _require(data, "src", path),
            _require(data, "tgt", path),
            {(g, f): h for g, f, h in data.get("compose", [])},
            _require(data, "identities", path),
        )
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), path) from exc


def arrow_pre_morphism_from_json(data: Any, f: NatTrans, t: NatTrans, path: str = "$") -> ArrowPreMorphism:
    alpha = _require(data, "alpha", path)
    phi_raw = _require(data, "phi", path)
    psi_raw = _require(data, "psi", path)
    phi, psi = {}, {}
    for b in t.shape.elements:
        a = _require(alpha, b, path + ".alpha")
        phi[b] = _component_morphism(
            f.source.at(a), t.source.at(b), _require(phi_raw, b, path + ".phi"), f"{path}.phi.{b}"
        )
        psi[b] = _component_morphism(
            f.target.at(a), t.target.at(b), _require(psi_raw, b, path + ".psi"), f"{path}.psi.{b}"
        )
    return ArrowPreMorphism(dict(alpha), phi, psi)


def reedy_to_json(rf: ReedyFactorization) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "mid": diagram_to_json(rf.mid),
        "left": {x: dict(rf.left.at(x).mapping) for x in rf.input.shape.elements},
        "right": {x: dict(rf.right.at(x).mapping) for x in rf.input.shape.elements},
        "report": dict(rf.report),
    }


def chi_to_json(chim: ChiMap, verification: dict[str, bool]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "alpha": dict(chim.alpha),
        "chi": {b: morphism_to_json(m) for b, m in chim.chi.items()},
        "report": dict(verification),
    }


def lifting_problem_from_json(data: Any, path: str = "$") -> LiftingProblem:
    left = morphism_from_json(_require(data, "left", path), path + ".left")
    right = nattrans_from_json(_require(data, "right", path), path + ".right")
    top_raw = _require(data, "top", path)
    bottom_raw = _require(data, "bottom", path)
    top = {
        t: _component_morphism(
            left.source, right.source.at(t), _require(top_raw, t, path + ".top"), f"{path}.top.{t}"
        )
        for t in right.shape.elements
    }
    bottom = {
        t: _component_morphism(
            left.target, right.target.at(t), _require(bottom_raw, t, path + ".bottom"), f"{path}.bottom.{t}"
        )
        for t in right.shape.elements
    }
    problem = LiftingProblem(left, right, top, bottom)
    try:
        problem.validate()
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc
    return problem


def cone_lift_to_json(cone: ConeLift, verification: dict[str, bool]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "components": {t: morphism_to_json(m) for t, m in cone.components.items()},
        "report": dict(verification),
    }


def pro_object_from_json(data: Any, path: str = "$") -> ProObject:
    diagram = diagram_from_json(_require(data, "diagram", path), path + ".diagram")
    cap = data.get("height_cap", diagram.shape.max_degree() + 1)
    try:
        return ProObject(diagram.shape, diagram, cap)
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def pre_morphism_from_json(data: Any, F: ProObject, G: ProObject, path: str = "$") -> PreMorphism:
    alpha = _require(data, "alpha", path)
    phi_raw = _require(data, "phi", path)
    phi = {}
    for b in G.shape.elements:
        a = _require(alpha, b, path + ".alpha")
        if a not in F.shape:
            raise ParseError(f"unknown index {a!r}", path + ".alpha")
        phi[b] = _component_morphism(
            F.at(a), G.at(b), _require(phi_raw, b, path + ".phi"), f"{path}.phi.{b}"
        )
    return PreMorphism(dict(alpha), phi)


def pre_morphism_to_json(pm: PreMorphism) -> dict:
    return {"alpha": dict(pm.alpha), "phi": {b: morphism_to_json(m) for b, m in pm.phi.items()}}


def raw_morphism_from_json(data: Any, F: ProObject, G: ProObject, path: str = "$") -> RawMorphism:
    rep_raw = _require(data, "rep", path)
    rep = {}
    for b in G.shape.elements:
        entry = _require(rep_raw, b, path + ".rep")
        a = _require(entry, "index", f"{path}.rep.{b}")
        if a not in F.shape:
            raise ParseError(f"unknown index {a!r}", f"{path}.rep.{b}")
        rep[b] = (
            a,
            _component_morphism(F.at(a), G.at(b), _require(entry, "map", f"{path}.rep.{b}"), f"{path}.rep.{b}.map"),
        )
    return RawMorphism(rep)


def tower_to_json(tower: CofinalTower, reports: list[OverCategoryReport], directed: bool) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "levels": [poset_to_json(level) for level in tower.levels],
        "projection": {
            "objects": dict(tower.obj_map),
            "morphisms": {f"{c}>{c2}": m for (c, c2), m in sorted(tower.mor_map.items())},
        },
        "report": {
            "tower": dict(tower.verify()),
            "directed": directed,
            "cofinality": [
                {
                    "object": r.object,
                    "nonempty": r.nonempty,
                    "connectivity": r.verdict,
                    "components": r.components,
                }
                for r in reports
            ],
        },
    }
