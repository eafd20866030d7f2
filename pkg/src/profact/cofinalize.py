"""Level-by-level construction of a directed index poset over a small
category, together with directedness and cofinality checks.

Level zero is the object set as an antichain.  Each later level adjoins,
for every small downward closed subset of the previous level, every cone
under it: an apex object plus a compatible family of legs.  The projection
functor sends a new element to its apex and the order relation to its legs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .category import FinCategory, is_directed_category
from .poset import FinPoset


class CofinalizeError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """The level enumeration grew past the configured element cap."""


ELEMENT_CAP = 10**4


@dataclass(frozen=True)
class ConeElement:
    """A level n+1 element: a downward closed subset of the previous level
    plus a cone under its image."""

    level: int
    members: tuple[str, ...]
    apex: str
    legs: dict[str, str]  # member -> morphism apex's object -> member's object


@dataclass(frozen=True)
class CofinalTower:
    source: FinCategory
    levels: tuple[FinPoset, ...]
    obj_map: dict[str, str]  # element -> object of the source category
    mor_map: dict[tuple[str, str], str]  # (c, c') with c >= c' -> morphism
    cones: dict[str, ConeElement] = field(compare=False, default_factory=dict)
    reysha_cap: int = 3

    @property
    def top(self) -> FinPoset:
        return self.levels[-1]

    def project_object(self, c: str) -> str:
        return self.obj_map[c]

    def project_morphism(self, c: str, c2: str) -> str:
        return self.mor_map[(c, c2)]

    def verify(self) -> dict[str, bool]:
        top = self.top
        typed = all(
            self.source.src[self.mor_map[(c, c2)]] == self.obj_map[c]
            and self.source.tgt[self.mor_map[(c, c2)]] == self.obj_map[c2]
            for c in top.elements
            for c2 in top.elements
            if top.le(c2, c)
        )
        functorial = all(
            self.source.compose(self.mor_map[(c2, c3)], self.mor_map[(c, c2)])
            == self.mor_map[(c, c3)]
            for c in top.elements
            for c2 in top.elements
            for c3 in top.elements
            if top.le(c3, c2) and top.le(c2, c)
        )
        coherent = all(
            set(small.elements) <= set(big.elements)
            and {p for p in big.le_pairs if p[0] in set(small.elements) and p[1] in set(small.elements)}
            == set(small.le_pairs)
            for small, big in zip(self.levels, self.levels[1:])
        )
        return {"projection_typed": typed, "projection_functorial": functorial, "levels_coherent": coherent}


def build_tower(
    I: FinCategory,
    levels: int = 2,
    reysha_cap: int = 3,
    element_cap: int = ELEMENT_CAP,
) -> CofinalTower:
    directed, witness = is_directed_category(I)
    if not directed:
        raise CofinalizeError(f"category is not directed (axiom {witness.axiom}, {witness.detail})")
    elements = list(I.objects)
    pairs: list[tuple[str, str]] = []
    obj_map = {o: o for o in I.objects}
    mor_map = {(o, o): I.identity(o) for o in I.objects}
    cones: dict[str, ConeElement] = {}
    level_posets = [FinPoset.make(tuple(elements), pairs)]
    for n in range(1, levels + 1):
        prev = level_posets[-1]
        counter = 0
        for reysha in prev.reyshas(max_size=reysha_cap):
            members = reysha.members
            for apex in I.objects:
                leg_choices = [I.hom(apex, obj_map[c]) for c in members]
                for legs in itertools.product(*leg_choices):
                    legs_by = dict(zip(members, legs))
                    if not all(
                        I.compose(mor_map[(c, c2)], legs_by[c]) == legs_by[c2]
                        for c in members
                        for c2 in members
                        if prev.lt(c2, c)
                    ):
                        continue
                    name = f"c{n}_{counter}"
                    counter += 1
                    elements.append(name)
                    if len(elements) > element_cap:
                        raise BudgetExceeded(
                            f"budget exceeded: more than {element_cap} tower elements"
                        )
                    obj_map[name] = apex
                    mor_map[(name, name)] = I.identity(apex)
                    for c in members:
                        pairs.append((c, name))
                        mor_map[(name, c)] = legs_by[c]
                    cones[name] = ConeElement(n, members, apex, legs_by)
        level_posets.append(FinPoset.make(tuple(elements), pairs))
    return CofinalTower(I, tuple(level_posets), obj_map, mor_map, cones, reysha_cap)


def check_tower_directedness(tower: CofinalTower, reysha_cap: int | None = None) -> bool:
    """Every small downward closed subset of the penultimate level has an
    upper bound in the final level."""
    cap = tower.reysha_cap if reysha_cap is None else reysha_cap
    base = tower.levels[-2] if len(tower.levels) > 1 else tower.levels[-1]
    top = tower.top
    for reysha in base.reyshas(max_size=cap):
        if not top.upper_bounds(reysha.members):
            return False
    return True


@dataclass(frozen=True)
class OverCategoryReport:
    object: str
    nonempty: bool
    verdict: str  # "true" or "inconclusive"
    components: int
    zigzag: tuple[tuple[tuple[str, str], tuple[str, str]], ...]

    @property
    def connected(self) -> bool:
        return self.verdict == "true"


def _over_category(tower: CofinalTower, i: str):
    objects = [
        (c, m)
        for c in tower.top.elements
        for m in tower.source.morphisms
        if tower.source.src[m] == tower.obj_map[c] and tower.source.tgt[m] == i
    ]
    edges = []
    for c2, m2 in objects:
        for c, m in objects:
            if tower.top.le(c, c2) and (c2, c) in tower.mor_map:
                if tower.source.compose(m, tower.mor_map[(c2, c)]) == m2:
                    edges.append(((c2, m2), (c, m)))
    return objects, edges


def check_cofinality(tower: CofinalTower) -> list[OverCategoryReport]:
    """For each object: is the over-category of the projection nonempty and
    connected at this truncation?

    Connectivity is judged on the objects indexed by the penultimate level;
    zigzags may pass through elements adjoined at the final level.
    Disconnection is never refuted: components may merge once higher levels
    adjoin equalizing cones, so a multi-component answer is "inconclusive".
    """
    base_elems = set(
        (tower.levels[-2] if len(tower.levels) > 1 else tower.levels[-1]).elements
    )
    reports = []
    for i in tower.source.objects:
        objects, edges = _over_category(tower, i)
        parent = {o: o for o in objects}

        def find(o):
            while parent[o] != o:
                parent[o] = parent[parent[o]]
                o = parent[o]
            return o

        witnesses = []
        for a, b in edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                witnesses.append((a, b))
        base_objects = [o for o in objects if o[0] in base_elems]
        components = len({find(o) for o in base_objects})
        verdict = "true" if components == 1 and base_objects else "inconclusive"
        reports.append(
            OverCategoryReport(i, bool(base_objects), verdict, components, tuple(witnesses))
        )
    return reports
