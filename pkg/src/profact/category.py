"""Small finite categories, directedness axioms and the initial-cone extension.

A poset is viewed as a category with a single morphism u -> v iff u >= v.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .poset import FinPoset, Reysha


class CategoryError(ValueError):
    pass


CONE_POINT = "∞"


@dataclass(frozen=True)
class FinCategory:
    """Objects, named morphisms, a total composition table and identities.

    Associativity and unit laws are checked exhaustively on construction.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: dict[str, str]
    tgt: dict[str, str]
    compose_table: dict[tuple[str, str], str]  # (g, f) with tgt(f) == src(g)
    identities: dict[str, str]
    _index: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    @staticmethod
    def make(
        objects,
        morphisms,
        src,
        tgt,
        compose_table,
        identities,
    ) -> "FinCategory":
        cat = FinCategory(
            tuple(objects), tuple(morphisms), dict(src), dict(tgt), dict(compose_table), dict(identities)
        )
        object.__setattr__(cat, "_index", {m: i for i, m in enumerate(cat.morphisms)})
        cat._validate()
        return cat

    def _validate(self) -> None:
        if len(set(self.objects)) != len(self.objects):
            raise CategoryError("duplicate object ids")
        if len(set(self.morphisms)) != len(self.morphisms):
            raise CategoryError("duplicate morphism ids")
        for m in self.morphisms:
            if self.src.get(m) not in self.objects or self.tgt.get(m) not in self.objects:
                raise CategoryError(f"morphism {m!r} has unknown source or target")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.src[i] != x or self.tgt[i] != x:
                raise CategoryError(f"missing or ill-typed identity on {x!r}")
        for g, f in itertools.product(self.morphisms, repeat=2):
            if self.tgt[f] == self.src[g]:
                h = self.compose_table.get((g, f))
                if h is None:
                    raise CategoryError(f"composition table missing entry for ({g!r}, {f!r})")
                if self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                    raise CategoryError(f"ill-typed composite {h!r} of ({g!r}, {f!r})")
            elif (g, f) in self.compose_table:
                raise CategoryError(f"composition table has entry for non-composable ({g!r}, {f!r})")
        for f in self.morphisms:
            if self.compose(f, self.identities[self.src[f]]) != f:
                raise CategoryError(f"right unit law fails for {f!r}")
            if self.compose(self.identities[self.tgt[f]], f) != f:
                raise CategoryError(f"left unit law fails for {f!r}")
        for h, g, f in itertools.product(self.morphisms, repeat=3):
            if self.tgt[f] == self.src[g] and self.tgt[g] == self.src[h]:
                if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                    raise CategoryError(f"associativity fails on ({h!r}, {g!r}, {f!r})")

    def compose(self, g: str, f: str) -> str:
        if self.tgt[f] != self.src[g]:
            raise CategoryError(f"cannot compose {g!r} after {f!r}")
        return self.compose_table[(g, f)]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return tuple(m for m in self.morphisms if self.src[m] == x and self.tgt[m] == y)

    def identity(self, x: str) -> str:
        return self.identities[x]


@dataclass(frozen=True)
class DirectednessWitness:
    axiom: int
    detail: tuple[str, ...]


def is_directed_category(cat: FinCategory) -> tuple[bool, DirectednessWitness | None]:
    """Exhaustively check the three directedness axioms.

    On failure the witness names the violated axiom and the offending
    objects or morphisms.
    """
    if not cat.objects:
        return False, DirectednessWitness(1, ())
    for s, t in itertools.combinations_with_replacement(cat.objects, 2):
        dominated = any(cat.hom(u, s) and cat.hom(u, t) for u in cat.objects)
        if not dominated:
            return False, DirectednessWitness(2, (s, t))
    for f, g in itertools.combinations(cat.morphisms, 2):
        if cat.src[f] != cat.src[g] or cat.tgt[f] != cat.tgt[g]:
            continue
        s = cat.src[f]
        equalized = any(
            cat.compose(f, h) == cat.compose(g, h)
            for u in cat.objects
            for h in cat.hom(u, s)
        )
        if not equalized:
            return False, DirectednessWitness(3, (f, g))
    return True, None


def poset_as_category(poset: FinPoset) -> FinCategory:
    """The category with a single morphism u -> v iff u >= v."""
    name = lambda u, v: f"{u}>={v}"
    morphisms = [name(u, v) for (v, u) in sorted(poset.le_pairs, key=lambda p: (poset.index(p[1]), poset.index(p[0])))]
    src = {name(u, v): u for (v, u) in poset.le_pairs}
    tgt = {name(u, v): v for (v, u) in poset.le_pairs}
    compose = {}
    for v, u in poset.le_pairs:  # u >= v
        for w in poset.elements:
            if poset.le(w, v):
                compose[(name(v, w), name(u, v))] = name(u, w)
    identities = {x: name(x, x) for x in poset.elements}
    return FinCategory.make(poset.elements, morphisms, src, tgt, compose, identities)


def category_poset_elements(cat: FinCategory) -> FinPoset | None:
    """Recover a poset presentation if every hom set has at most one arrow."""
    pairs = []
    for u in cat.objects:
        for v in cat.objects:
            homs = cat.hom(u, v)
            if len(homs) > 1:
                return None
            if homs and u != v:
                if cat.hom(v, u):
                    return None
                pairs.append((v, u))  # arrow u -> v means v <= u
    return FinPoset.make(cat.objects, pairs)


def cone_extend(reysha: Reysha) -> FinCategory:
    """Adjoin a fresh initial object to a Reysha viewed as a category.

    The new object has exactly one morphism to every other object; the
    empty Reysha yields the one-object category on the cone point.
    """
    base = poset_as_category(reysha.as_poset())
    if CONE_POINT in base.objects:
        raise CategoryError(f"element id {CONE_POINT!r} is reserved for the cone point")
    objects = (CONE_POINT,) + base.objects
    cone_name = lambda c: f"{CONE_POINT}->{c}"
    morphisms = tuple(cone_name(c) for c in objects) + base.morphisms
    src = dict(base.src)
    tgt = dict(base.tgt)
    for c in objects:
        src[cone_name(c)] = CONE_POINT
        tgt[cone_name(c)] = c
    compose = dict(base.compose_table)
    identities = dict(base.identities)
    identities[CONE_POINT] = cone_name(CONE_POINT)
    for m in morphisms:
        if src[m] == CONE_POINT:
            compose[(m, cone_name(CONE_POINT))] = m
    for m in base.morphisms:
        compose[(m, cone_name(base.src[m]))] = cone_name(base.tgt[m])
    return FinCategory.make(objects, morphisms, src, tgt, compose, identities)


def parallel_pair_category() -> FinCategory:
    """The category with two objects and two parallel non-identity arrows."""
    return FinCategory.make(
        objects=("x", "y"),
        morphisms=("id_x", "id_y", "f", "g"),
        src={"id_x": "x", "id_y": "y", "f": "x", "g": "x"},
        tgt={"id_x": "x", "id_y": "y", "f": "y", "g": "y"},
        compose_table={
            ("id_x", "id_x"): "id_x",
            ("id_y", "id_y"): "id_y",
            ("f", "id_x"): "f",
            ("g", "id_x"): "g",
            ("id_y", "f"): "f",
            ("id_y", "g"): "g",
        },
        identities={"x": "id_x", "y": "id_y"},
    )
