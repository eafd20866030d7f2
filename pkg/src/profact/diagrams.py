"""Diagrams over finite posets valued in finite sets, and their transformations.

Order convention: the poset gives a single morphism u -> v iff u >= v, so a
diagram carries a map at(x) -> at(y) for every pair x >= y.  Arrows are
stored for all comparable pairs and functoriality is checked exhaustively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .base import (
    BaseError,
    BaseMorphism,
    BaseObject,
    TERMINAL,
    compose,
    identity,
    induced_into_pullback,
    is_in_m,
    is_in_n,
    pullback,
)
from .poset import FinPoset, Reysha


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Diagram:
    shape: FinPoset
    objects: dict[str, BaseObject]
    arrows: dict[tuple[str, str], BaseMorphism]  # (x, y) with x >= y: at(x) -> at(y)

    @staticmethod
    def make(
        shape: FinPoset,
        objects: dict[str, BaseObject],
        arrows: dict[tuple[str, str], BaseMorphism] | None = None,
    ) -> "Diagram":
        arrows = dict(arrows or {})
        for x in shape.elements:
            if x not in objects:
                raise DiagramError(f"no fiber assigned to element {x!r}")
            arrows.setdefault((x, x), identity(objects[x]))
        diagram = Diagram(shape, dict(objects), arrows)
        diagram._validate()
        return diagram

    def _validate(self) -> None:
        for x in self.shape.elements:
            for y in self.shape.elements:
                if self.shape.le(y, x):
                    arr = self.arrows.get((x, y))
                    if arr is None:
                        raise DiagramError(f"missing arrow for pair {x!r} >= {y!r}")
                    if arr.source != self.objects[x] or arr.target != self.objects[y]:
                        raise DiagramError(f"ill-typed arrow for pair {x!r} >= {y!r}")
                elif (x, y) in self.arrows:
                    raise DiagramError(f"arrow present for non-comparable pair ({x!r}, {y!r})")
        for x, y, z in itertools.product(self.shape.elements, repeat=3):
            if self.shape.le(z, y) and self.shape.le(y, x):
                if compose(self.arrows[(y, z)], self.arrows[(x, y)]) != self.arrows[(x, z)]:
                    raise DiagramError(f"functoriality fails along {x!r} >= {y!r} >= {z!r}")

    def at(self, x: str) -> BaseObject:
        return self.objects[x]

    def arrow(self, x: str, y: str) -> BaseMorphism:
        return self.arrows[(x, y)]

    def restrict(self, reysha: Reysha) -> "Diagram":
        if reysha.parent != self.shape:
            raise DiagramError("Reysha belongs to a different poset")
        members = set(reysha.members)
        return Diagram.make(
            self.shape.restrict(reysha.members),
            {x: self.objects[x] for x in reysha.members},
            {p: a for p, a in self.arrows.items() if p[0] in members and p[1] in members},
        )


@dataclass(frozen=True)
class NatTrans:
    source: Diagram
    target: Diagram
    components: dict[str, BaseMorphism]

    @staticmethod
    def make(source: Diagram, target: Diagram, components: dict[str, BaseMorphism]) -> "NatTrans":
        nt = NatTrans(source, target, dict(components))
        nt._validate()
        return nt

    def _validate(self) -> None:
        if self.source.shape != self.target.shape:
            raise DiagramError("source and target diagrams have different shapes")
        for x in self.source.shape.elements:
            comp = self.components.get(x)
            if comp is None or comp.source != self.source.at(x) or comp.target != self.target.at(x):
                raise DiagramError(f"missing or ill-typed component at {x!r}")
        for x in self.source.shape.elements:
            for y in self.source.shape.elements:
                if self.source.shape.lt(y, x):
                    left = compose(self.components[y], self.source.arrow(x, y))
                    right = compose(self.target.arrow(x, y), self.components[x])
                    if left != right:
                        raise DiagramError(f"naturality fails on {x!r} >= {y!r}")

    def at(self, x: str) -> BaseMorphism:
        return self.components[x]

    @property
    def shape(self) -> FinPoset:
        return self.source.shape

    def restrict(self, reysha: Reysha) -> "NatTrans":
        return NatTrans.make(
            self.source.restrict(reysha),
            self.target.restrict(reysha),
            {x: self.components[x] for x in reysha.members},
        )


_LIMIT_CACHE: dict = {}
_LIMIT_CACHE_MAX = 512


def clear_limit_cache() -> None:
    _LIMIT_CACHE.clear()


def _limit_key(diagram: Diagram):
    return (
        diagram.shape.elements,
        tuple(sorted(diagram.shape.le_pairs)),
        tuple((x, diagram.objects[x].carrier) for x in diagram.shape.elements),
        tuple(
            sorted(
                (pair, tuple(sorted(arr.mapping.items())))
                for pair, arr in diagram.arrows.items()
            )
        ),
    )


def limit_over_poset(diagram: Diagram) -> tuple[BaseObject, dict[str, BaseMorphism]]:
    """The limit of a diagram over a finite poset: all compatible families.

    The empty shape yields the terminal one-point object.  Carrier ids are
    positional ("l0", "l1", ...) in the canonical enumeration order, which
    runs over the fibers of the maximal elements (everything else is
    determined by the arrows).  Results are cached by value, since the same
    restricted diagram is typically requested several times per run.
    """
    shape = diagram.shape
    if not shape.elements:
        return TERMINAL, {}
    key = _limit_key(diagram)
    cached = _LIMIT_CACHE.get(key)
    if cached is not None:
        return cached
    maximal = [x for x in shape.elements if not any(shape.lt(x, y) for y in shape.elements)]
    owners = {y: [m for m in maximal if shape.le(y, m)] for y in shape.elements}
    # elements under a single maximal can never conflict, so they are filled
    # in only after the shared ones agree
    shared = {
        m: [(y, diagram.arrow(m, y).mapping) for y in shape.elements if shape.le(y, m) and len(owners[y]) > 1]
        for m in maximal
    }
    private = {
        m: [(y, diagram.arrow(m, y).mapping) for y in shape.elements if shape.le(y, m) and len(owners[y]) == 1]
        for m in maximal
    }
    families: list[dict[str, str]] = []
    for choice in itertools.product(*(diagram.at(m).carrier for m in maximal)):
        family: dict[str, str] = {}
        ok = True
        for m, v in zip(maximal, choice):
            for y, mapping in shared[m]:
                value = mapping[v]
                if family.setdefault(y, value) != value:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for m, v in zip(maximal, choice):
                for y, mapping in private[m]:
                    family[y] = mapping[v]
            families.append(family)
    carrier = BaseObject(tuple(f"l{i}" for i in range(len(families))))
    projections = {
        x: BaseMorphism(carrier, diagram.at(x), {f"l{i}": fam[x] for i, fam in enumerate(families)})
        for x in shape.elements
    }
    if len(_LIMIT_CACHE) >= _LIMIT_CACHE_MAX:
        _LIMIT_CACHE.clear()
    _LIMIT_CACHE[key] = (carrier, projections)
    return carrier, projections


def limit_map(
    source_limit: tuple[BaseObject, dict[str, BaseMorphism]],
    target_limit: tuple[BaseObject, dict[str, BaseMorphism]],
    components: dict[str, BaseMorphism],
) -> BaseMorphism:
    """The map of limits induced by levelwise maps commuting with the arrows."""
    src_obj, src_proj = source_limit
    tgt_obj, tgt_proj = target_limit
    if not tgt_proj:
        return BaseMorphism(src_obj, tgt_obj, {e: "*" for e in src_obj.carrier})
    index = {
        tuple(tgt_proj[x](e) for x in sorted(tgt_proj)): e for e in tgt_obj.carrier
    }
    mapping = {}
    for e in src_obj.carrier:
        key = tuple(components[x](src_proj[x](e)) for x in sorted(tgt_proj))
        if key not in index:
            raise DiagramError("levelwise maps do not induce a map of limits")
        mapping[e] = index[key]
    return BaseMorphism(src_obj, tgt_obj, mapping)


def is_levelwise(nt: NatTrans, cls: str) -> bool:
    """True iff every component lies in the named class ("N" or "M")."""
    pred = {"N": is_in_n, "M": is_in_m}[cls]
    return all(pred(nt.at(x)) for x in nt.shape.elements)


def matching_data(nt: NatTrans, x: str):
    """The matching pullback at x and the relative map into it.

    Returns (pullback carrier, projection to target fiber, projection to
    the source matching limit, relative map source.at(x) -> pullback).
    """
    shape = nt.shape
    strict = Reysha(shape, shape.strict_downset(x))
    src_limit = limit_over_poset(nt.source.restrict(strict))
    tgt_limit = limit_over_poset(nt.target.restrict(strict))
    limit_of_components = limit_map(src_limit, tgt_limit, {s: nt.at(s) for s in strict.members})
    fiber_to_limit = limit_map(
        (nt.target.at(x), {s: nt.target.arrow(x, s) for s in strict.members}),
        tgt_limit,
        {s: identity(nt.target.at(s)) for s in strict.members},
    )
    pb = pullback(fiber_to_limit, limit_of_components)
    into_fiber = nt.at(x)
    into_limit = limit_map(
        (nt.source.at(x), {s: nt.source.arrow(x, s) for s in strict.members}),
        src_limit,
        {s: identity(nt.source.at(s)) for s in strict.members},
    )
    relative = induced_into_pullback(pb, into_fiber, into_limit)
    carrier, proj_fiber, proj_limit = pb
    return carrier, proj_fiber, proj_limit, relative


def relative_matching_map(nt: NatTrans, x: str) -> BaseMorphism:
    """The canonical map from the source fiber into the matching pullback."""
    return matching_data(nt, x)[3]


def is_special(nt: NatTrans, cls: str = "M") -> bool:
    """True iff the relative matching map lies in the class at every element."""
    pred = {"N": is_in_n, "M": is_in_m}[cls]
    return all(pred(relative_matching_map(nt, x)) for x in nt.shape.elements)
