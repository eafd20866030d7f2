"""Lifting problems: a brute-force oracle, the degree-recursive lift against
special surjective transformations, and the retract exhibitor."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .base import (
    BaseMorphism,
    compose,
    factorize_base,
    identity,
    induced_into_pullback,
    is_in_m,
    is_in_n,
    lift_base,
)
from .diagrams import NatTrans, is_levelwise, is_special, limit_map, limit_over_poset, matching_data
from .poset import Reysha


class LiftingError(ValueError):
    pass


class SearchExhausted(RuntimeError):
    """Raised when the brute-force search space exceeds the candidate cap."""


SEARCH_CAP = 10**6


@dataclass(frozen=True)
class LiftingProblem:
    """A square (or cone of squares) asking for a diagonal filler.

    left is a single map g: A -> B; right is a transformation over a poset;
    top and bottom are compatible cones from A and B into its two layers.
    """

    left: BaseMorphism
    right: NatTrans
    top: dict[str, BaseMorphism]
    bottom: dict[str, BaseMorphism]

    def validate(self) -> None:
        shape = self.right.shape
        for t in shape.elements:
            top = self.top.get(t)
            bottom = self.bottom.get(t)
            if top is None or top.source != self.left.source or top.target != self.right.source.at(t):
                raise LiftingError(f"missing or ill-typed top cone component at {t!r}")
            if bottom is None or bottom.source != self.left.target or bottom.target != self.right.target.at(t):
                raise LiftingError(f"missing or ill-typed bottom cone component at {t!r}")
            if compose(self.right.at(t), top) != compose(bottom, self.left):
                raise LiftingError(f"lifting square does not commute at {t!r}")
        for t in shape.elements:
            for s in shape.elements:
                if shape.lt(s, t):
                    if compose(self.right.source.arrow(t, s), self.top[t]) != self.top[s]:
                        raise LiftingError(f"top cone incompatible on {t!r} >= {s!r}")
                    if compose(self.right.target.arrow(t, s), self.bottom[t]) != self.bottom[s]:
                        raise LiftingError(f"bottom cone incompatible on {t!r} >= {s!r}")


@dataclass(frozen=True)
class ConeLift:
    components: dict[str, BaseMorphism]

    def verify(self, problem: LiftingProblem) -> dict[str, bool]:
        shape = problem.right.shape
        upper = all(
            compose(self.components[t], problem.left) == problem.top[t] for t in shape.elements
        )
        lower = all(
            compose(problem.right.at(t), self.components[t]) == problem.bottom[t]
            for t in shape.elements
        )
        compatible = all(
            compose(problem.right.source.arrow(t, s), self.components[t]) == self.components[s]
            for t in shape.elements
            for s in shape.elements
            if shape.lt(s, t)
        )
        return {"upper_triangles": upper, "lower_triangles": lower, "cone_compatible": compatible}


def has_lift_bruteforce(
    g: BaseMorphism,
    f: BaseMorphism,
    top: BaseMorphism,
    bottom: BaseMorphism,
    cap: int = SEARCH_CAP,
) -> tuple[bool, BaseMorphism | None]:
    """Decide a single lifting square by enumerating all maps B -> X.

    Raises SearchExhausted when |X| ** |B| exceeds the cap.
    """
    if compose(f, top) != compose(bottom, g):
        raise LiftingError("lifting square does not commute")
    domain = g.target.carrier
    codomain = f.source.carrier
    if len(codomain) ** len(domain) > cap:
        raise SearchExhausted(
            f"search exhausted: {len(codomain)} ** {len(domain)} candidates exceed cap {cap}"
        )
    for values in itertools.product(codomain, repeat=len(domain)):
        cand = BaseMorphism(g.target, f.source, dict(zip(domain, values)))
        if compose(cand, g) == top and compose(f, cand) == bottom:
            return True, cand
    return False, None


def lift_against_special(problem: LiftingProblem) -> ConeLift:
    """Build a compatible cone of lifts in degree order.

    At each element the already-built lifts assemble into a map to the
    matching limit, the bottom component supplies the fiber coordinate, and
    the base lift against the relative matching map fills the square.
    """
    problem.validate()
    if not is_in_n(problem.left):
        raise LiftingError("left map is not injective")
    if not is_special(problem.right, "M"):
        raise LiftingError("right transformation is not special surjective")
    f = problem.right
    shape = f.shape
    lifts: dict[str, BaseMorphism] = {}
    for t in shape.in_degree_order():
        strict = shape.strict_downset(t)
        carrier, proj_fiber, proj_limit, relative = matching_data(f, t)
        src_limit = limit_over_poset(f.source.restrict(Reysha(shape, strict)))
        into_limit = limit_map(
            (problem.left.target, {s: lifts[s] for s in strict}),
            src_limit,
            {s: identity(f.source.at(s)) for s in strict},
        )
        into_pb = induced_into_pullback(
            (carrier, proj_fiber, proj_limit), problem.bottom[t], into_limit
        )
        lifts[t] = lift_base(problem.left, relative, problem.top[t], into_pb)
    return ConeLift(lifts)


@dataclass(frozen=True)
class RetractDiagram:
    """h exhibited as a retract of the surjective part of its factorization."""

    arrow: BaseMorphism  # h: X -> Y
    surjection: BaseMorphism  # p: mid -> Y
    section: BaseMorphism  # q: X -> mid
    retraction: BaseMorphism  # k: mid -> X
    report: dict[str, bool] = field(compare=False, default_factory=dict)

    def verify(self) -> dict[str, bool]:
        return {
            "section_retracts": compose(self.retraction, self.section) == identity(self.arrow.source),
            "left_square": compose(self.surjection, self.section) == self.arrow,
            "right_square": compose(self.arrow, self.retraction) == self.surjection,
        }


def retract_exhibitor(h: BaseMorphism, cap: int = SEARCH_CAP) -> RetractDiagram:
    """Exhibit h as a retract of the surjection in its canonical factorization.

    Requires h to have the right lifting property against its own
    factorization's injective part.
    """
    triple = factorize_base(h)
    ok, k = has_lift_bruteforce(triple.left, h, identity(h.source), triple.right, cap)
    if not ok:
        raise LiftingError("arrow lacks the right lifting property against its injective part")
    diagram = RetractDiagram(h, triple.right, triple.left, k)
    object.__setattr__(diagram, "report", diagram.verify())
    return diagram


def solve_square_levelwise(
    left: NatTrans,
    right: BaseMorphism,
    t0: str,
    top: BaseMorphism,
    bottom: BaseMorphism,
) -> dict[str, BaseMorphism]:
    """Lift a levelwise-injective tower against a surjection, given a level
    through which the square factors.

    Returns the base lift at the representative level composed with the
    structural maps, one component per element above the representative.
    """
    if t0 not in left.shape:
        raise LiftingError(f"unknown representative level {t0!r}")
    if not is_levelwise(left, "N"):
        raise LiftingError("tower is not levelwise injective")
    if not is_in_m(right):
        raise LiftingError("right map is not surjective")
    if top.source != left.source.at(t0) or bottom.source != left.target.at(t0):
        raise LiftingError("square components not typed at the representative level")
    base = lift_base(left.at(t0), right, top, bottom)
    return {
        t: compose(base, left.target.arrow(t, t0))
        for t in left.shape.elements
        if left.shape.le(t0, t)
    }
