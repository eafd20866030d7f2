"""The base category: finite sets, with injections-then-surjections factorization.

The mid object of the functorial factorization is the tagged disjoint union
of source and target, so the construction is strictly functorial and all
outputs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass


class BaseError(ValueError):
    pass


@dataclass(frozen=True)
class BaseObject:
    """A finite set with a canonical carrier order."""

    carrier: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.carrier)) != len(self.carrier):
            raise BaseError("duplicate element ids in carrier")

    def __contains__(self, x: str) -> bool:
        return x in set(self.carrier)

    def __len__(self) -> int:
        return len(self.carrier)


TERMINAL = BaseObject(("*",))


@dataclass(frozen=True)
class BaseMorphism:
    source: BaseObject
    target: BaseObject
    mapping: dict[str, str]

    def __post_init__(self) -> None:
        if set(self.mapping) != set(self.source.carrier):
            raise BaseError("assignment is not total on the source carrier")
        for v in self.mapping.values():
            if v not in self.target:
                raise BaseError(f"assignment value {v!r} outside target carrier")

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def __hash__(self) -> int:
        return hash((self.source.carrier, self.target.carrier, tuple(sorted(self.mapping.items()))))


def identity(obj: BaseObject) -> BaseMorphism:
    return BaseMorphism(obj, obj, {x: x for x in obj.carrier})


def morphism(source: BaseObject, target: BaseObject, mapping: dict[str, str]) -> BaseMorphism:
    return BaseMorphism(source, target, dict(mapping))


def compose(g: BaseMorphism, f: BaseMorphism) -> BaseMorphism:
    if f.target != g.source:
        raise BaseError("composition mismatch: target of inner differs from source of outer")
    return BaseMorphism(f.source, g.target, {x: g(f(x)) for x in f.source.carrier})


def is_in_n(f: BaseMorphism) -> bool:
    """Left class membership: injectivity."""
    values = list(f.mapping.values())
    return len(set(values)) == len(values)


def is_in_m(f: BaseMorphism) -> bool:
    """Right class membership: surjectivity."""
    return set(f.mapping.values()) == set(f.target.carrier)


def terminal_map(obj: BaseObject) -> BaseMorphism:
    return BaseMorphism(obj, TERMINAL, {x: "*" for x in obj.carrier})


def pullback(f: BaseMorphism, g: BaseMorphism) -> tuple[BaseObject, BaseMorphism, BaseMorphism]:
    """The fiber product of f: X -> Z and g: Y -> Z with coordinate projections.

    Carrier ids are positional ("p0", "p1", ...) in the canonical
    (X-major, Y-minor) enumeration order.
    """
    if f.target != g.target:
        raise BaseError("pullback legs must share a target")
    pairs = [(x, y) for x in f.source.carrier for y in g.source.carrier if f(x) == g(y)]
    carrier = BaseObject(tuple(f"p{i}" for i in range(len(pairs))))
    proj_f = BaseMorphism(carrier, f.source, {f"p{i}": x for i, (x, _) in enumerate(pairs)})
    proj_g = BaseMorphism(carrier, g.source, {f"p{i}": y for i, (_, y) in enumerate(pairs)})
    return carrier, proj_f, proj_g


def induced_into_pullback(
    pb: tuple[BaseObject, BaseMorphism, BaseMorphism],
    to_f_source: BaseMorphism,
    to_g_source: BaseMorphism,
) -> BaseMorphism:
    """The canonical map into a pullback from a compatible span."""
    carrier, proj_f, proj_g = pb
    lookup = {(proj_f(p), proj_g(p)): p for p in carrier.carrier}
    mapping = {}
    for w in to_f_source.source.carrier:
        key = (to_f_source(w), to_g_source(w))
        if key not in lookup:
            raise BaseError("span does not commute with the pullback legs")
        mapping[w] = lookup[key]
    return BaseMorphism(to_f_source.source, carrier, mapping)


SOURCE_TAG = "s:"
TARGET_TAG = "t:"


@dataclass(frozen=True)
class FactorizationTriple:
    mid: BaseObject
    left: BaseMorphism
    right: BaseMorphism


def factorize_base(f: BaseMorphism) -> FactorizationTriple:
    """Factor f as an injection followed by a surjection via the tagged sum.

    mid = source ⊔ target; left is the source inclusion, right collapses
    the source part along f and is the identity on the target part.
    """
    mid = BaseObject(
        tuple(SOURCE_TAG + x for x in f.source.carrier) + tuple(TARGET_TAG + y for y in f.target.carrier)
    )
    left = BaseMorphism(f.source, mid, {x: SOURCE_TAG + x for x in f.source.carrier})
    right_map = {SOURCE_TAG + x: f(x) for x in f.source.carrier}
    right_map.update({TARGET_TAG + y: y for y in f.target.carrier})
    right = BaseMorphism(mid, f.target, right_map)
    return FactorizationTriple(mid, left, right)


def factorize_mid_map(
    f: BaseMorphism, t: BaseMorphism, top: BaseMorphism, bottom: BaseMorphism
) -> BaseMorphism:
    """The functorial action on a commuting square (top, bottom): f -> t.

    Requires top: src(f) -> src(t) and bottom: tgt(f) -> tgt(t) with
    t∘top = bottom∘f; returns the induced map between the mid objects.
    """
    if compose(t, top) != compose(bottom, f):
        raise BaseError("square does not commute")
    mid_f = factorize_base(f)
    mid_t = factorize_base(t)
    mapping = {}
    for x in f.source.carrier:
        mapping[SOURCE_TAG + x] = SOURCE_TAG + top(x)
    for y in f.target.carrier:
        mapping[TARGET_TAG + y] = TARGET_TAG + bottom(y)
    return BaseMorphism(mid_f.mid, mid_t.mid, mapping)


def lift_base(
    g: BaseMorphism, f: BaseMorphism, top: BaseMorphism, bottom: BaseMorphism
) -> BaseMorphism:
    """Solve the lifting problem for g injective against f surjective.

    Off the image of g, the lift picks the least f-preimage (in carrier
    order) of the bottom value, so outputs are reproducible.
    """
    if not is_in_n(g):
        raise BaseError("left map is not injective")
    if not is_in_m(f):
        raise BaseError("right map is not surjective")
    if compose(f, top) != compose(bottom, g):
        raise BaseError("lifting square does not commute")
    image = {g(a): a for a in g.source.carrier}
    mapping = {}
    for b in g.target.carrier:
        if b in image:
            mapping[b] = top(image[b])
        else:
            y = bottom(b)
            mapping[b] = next(x for x in f.source.carrier if f(x) == y)
    return BaseMorphism(g.target, f.source, mapping)
