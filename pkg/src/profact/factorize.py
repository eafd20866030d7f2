"""Reedy factorizations of poset-indexed transformations, and the induced
action on arrows presented by index-reparametrizing pre-morphisms.

Every transformation f: C -> D over a finite poset factors as a levelwise
injective map into a middle diagram followed by a special surjective map.
The middle fiber at each element is produced by the base factorization of
the canonical map into the matching pullback, so the whole construction is
deterministic and restriction-coherent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .base import (
    BaseMorphism,
    BaseObject,
    compose,
    factorize_base,
    factorize_mid_map,
    identity,
    induced_into_pullback,
    pullback,
)
from .diagrams import Diagram, NatTrans, is_levelwise, is_special, limit_map, limit_over_poset
from .poset import FinPoset, Reysha


class FactorizeError(ValueError):
    pass


@dataclass(frozen=True)
class StepData:
    """Per-element bookkeeping: the matching pullback and its projections."""

    pullback: BaseObject
    to_fiber: BaseMorphism  # pullback -> D(x)
    to_lower: dict[str, BaseMorphism]  # pullback -> H(s) for each s < x
    into_pullback: BaseMorphism  # C(x) -> pullback
    right: BaseMorphism  # H(x) -> pullback


@dataclass(frozen=True)
class ReedyFactorization:
    input: NatTrans
    mid: Diagram
    left: NatTrans  # levelwise injective
    right: NatTrans  # special surjective
    details: dict[str, StepData] = field(compare=False, repr=False, default_factory=dict)
    report: dict[str, bool] = field(compare=False, default_factory=dict)

    def verify(self) -> dict[str, bool]:
        shape = self.input.shape
        composite = all(
            compose(self.right.at(x), self.left.at(x)) == self.input.at(x) for x in shape.elements
        )
        return {
            "composite_equals_input": composite,
            "left_levelwise_injective": is_levelwise(self.left, "N"),
            "right_special_surjective": is_special(self.right, "M"),
        }


def _step(
    f: NatTrans,
    mid_objects: dict[str, BaseObject],
    mid_arrows: dict[tuple[str, str], BaseMorphism],
    left: dict[str, BaseMorphism],
    right: dict[str, BaseMorphism],
    details: dict[str, StepData],
    x: str,
) -> None:
    """Extend a partial factorization to one more element whose strict
    downset is already covered."""
    shape = f.shape
    strict = shape.strict_downset(x)
    sub = shape.restrict(strict)
    mid_partial = Diagram.make(
        sub,
        {s: mid_objects[s] for s in strict},
        {p: a for p, a in mid_arrows.items() if p[0] in strict and p[1] in strict},
    )
    target_partial = f.target.restrict(Reysha(shape, strict))
    lim_mid = limit_over_poset(mid_partial)
    lim_tgt = limit_over_poset(target_partial)
    mid_to_tgt = limit_map(lim_mid, lim_tgt, {s: right[s] for s in strict})
    fiber_to_tgt = limit_map(
        (f.target.at(x), {s: f.target.arrow(x, s) for s in strict}),
        lim_tgt,
        {s: identity(f.target.at(s)) for s in strict},
    )
    pb = pullback(mid_to_tgt, fiber_to_tgt)
    carrier, proj_lim, proj_fiber = pb
    into_lim = limit_map(
        (f.source.at(x), {s: compose(left[s], f.source.arrow(x, s)) for s in strict}),
        lim_mid,
        {s: identity(mid_objects[s]) for s in strict},
    )
    u = induced_into_pullback(pb, into_lim, f.at(x))
    triple = factorize_base(u)
    lim_proj = lim_mid[1]
    to_lower = {s: compose(lim_proj[s], proj_lim) for s in strict}
    mid_objects[x] = triple.mid
    left[x] = triple.left
    right[x] = compose(proj_fiber, triple.right)
    mid_arrows[(x, x)] = identity(triple.mid)
    for s in strict:
        mid_arrows[(x, s)] = compose(to_lower[s], triple.right)
    details[x] = StepData(carrier, proj_fiber, to_lower, u, triple.right)


def _assemble(f: NatTrans, shape: FinPoset, mid_objects, mid_arrows, left, right, details) -> ReedyFactorization:
    mid = Diagram.make(shape, dict(mid_objects), dict(mid_arrows))
    left_nt = NatTrans.make(f.source, mid, dict(left))
    right_nt = NatTrans.make(mid, f.target, dict(right))
    rf = ReedyFactorization(f, mid, left_nt, right_nt, dict(details))
    object.__setattr__(rf, "report", rf.verify())
    return rf


def reedy(f: NatTrans) -> ReedyFactorization:
    """Factor f into a levelwise-injective map followed by a special
    surjective map, processing elements in (degree, canonical) order."""
    mid_objects: dict[str, BaseObject] = {}
    mid_arrows: dict[tuple[str, str], BaseMorphism] = {}
    left: dict[str, BaseMorphism] = {}
    right: dict[str, BaseMorphism] = {}
    details: dict[str, StepData] = {}
    for x in f.shape.in_degree_order():
        _step(f, mid_objects, mid_arrows, left, right, details, x)
    return _assemble(f, f.shape, mid_objects, mid_arrows, left, right, details)


def extend_step(f: NatTrans, partial: ReedyFactorization, x: str) -> ReedyFactorization:
    """One extension step: graft the factorization of the matching-pullback
    map at x onto a partial factorization over the strict downset of x."""
    if x not in f.shape:
        raise FactorizeError(f"unknown element {x!r}")
    strict = f.shape.strict_downset(x)
    if tuple(partial.input.shape.elements) != strict:
        raise FactorizeError(
            f"partial factorization covers {partial.input.shape.elements}, "
            f"expected the strict downset {strict} of {x!r}"
        )
    mid_objects = dict(partial.mid.objects)
    mid_arrows = dict(partial.mid.arrows)
    left = dict(partial.left.components)
    right = dict(partial.right.components)
    details = dict(partial.details)
    _step(f, mid_objects, mid_arrows, left, right, details, x)
    members = strict + (x,)
    sub = f.shape.restrict(members)
    f_sub = f.restrict(Reysha(f.shape, members))
    return _assemble(f_sub, sub, mid_objects, mid_arrows, left, right, details)


@dataclass(frozen=True)
class ArrowPreMorphism:
    """A pre-morphism between arrow objects f: E -> F over A and
    t: K -> G over B: a strictly increasing index map plus a commuting
    square of natural families."""

    alpha: dict[str, str]  # B -> A
    phi: dict[str, BaseMorphism]  # E(alpha(b)) -> K(b)
    psi: dict[str, BaseMorphism]  # F(alpha(b)) -> G(b)

    def validate(self, f: NatTrans, t: NatTrans) -> None:
        a_shape, b_shape = f.shape, t.shape
        for b in b_shape.elements:
            if self.alpha.get(b) not in a_shape:
                raise FactorizeError(f"index map undefined or out of range at {b!r}")
        for b in b_shape.elements:
            for b2 in b_shape.elements:
                if b_shape.lt(b2, b):
                    if not a_shape.lt(self.alpha[b2], self.alpha[b]):
                        raise FactorizeError(
                            f"index map is not strictly increasing on {b2!r} < {b!r}"
                        )
        for b in b_shape.elements:
            a = self.alpha[b]
            if self.phi[b].source != f.source.at(a) or self.phi[b].target != t.source.at(b):
                raise FactorizeError(f"ill-typed top component at {b!r}")
            if self.psi[b].source != f.target.at(a) or self.psi[b].target != t.target.at(b):
                raise FactorizeError(f"ill-typed bottom component at {b!r}")
            if compose(self.psi[b], f.at(a)) != compose(t.at(b), self.phi[b]):
                raise FactorizeError(f"component square does not commute at {b!r}")
        for b in b_shape.elements:
            for b2 in b_shape.elements:
                if b_shape.lt(b2, b):
                    if compose(self.phi[b2], f.source.arrow(self.alpha[b], self.alpha[b2])) != compose(
                        t.source.arrow(b, b2), self.phi[b]
                    ):
                        raise FactorizeError(f"top family not natural on {b!r} >= {b2!r}")
                    if compose(self.psi[b2], f.target.arrow(self.alpha[b], self.alpha[b2])) != compose(
                        t.target.arrow(b, b2), self.psi[b]
                    ):
                        raise FactorizeError(f"bottom family not natural on {b!r} >= {b2!r}")


@dataclass(frozen=True)
class ChiMap:
    """The middle layer of the factorized arrow map: a family
    H_f(alpha(b)) -> H_t(b), natural in b."""

    alpha: dict[str, str]
    chi: dict[str, BaseMorphism]

    def verify(self, pm: ArrowPreMorphism, rf_f: ReedyFactorization, rf_t: ReedyFactorization) -> dict[str, bool]:
        top = all(
            compose(self.chi[b], rf_f.left.at(self.alpha[b])) == compose(rf_t.left.at(b), pm.phi[b])
            for b in self.chi
        )
        bottom = all(
            compose(pm.psi[b], rf_f.right.at(self.alpha[b])) == compose(rf_t.right.at(b), self.chi[b])
            for b in self.chi
        )
        natural = True
        b_shape = rf_t.input.shape
        for b in b_shape.elements:
            for b2 in b_shape.elements:
                if b_shape.lt(b2, b):
                    lhs = compose(self.chi[b2], rf_f.mid.arrow(self.alpha[b], self.alpha[b2]))
                    rhs = compose(rf_t.mid.arrow(b, b2), self.chi[b])
                    natural = natural and lhs == rhs
        return {"left_rectangle": top, "right_rectangle": bottom, "natural": natural}


def chi_construct(
    f: NatTrans,
    t: NatTrans,
    pm: ArrowPreMorphism,
    rf_f: ReedyFactorization | None = None,
    rf_t: ReedyFactorization | None = None,
) -> ChiMap:
    """Build the middle component family by degree recursion over the
    target index poset, using the strict base functoriality at each step."""
    pm.validate(f, t)
    rf_f = rf_f if rf_f is not None else reedy(f)
    rf_t = rf_t if rf_t is not None else reedy(t)
    b_shape = t.shape
    chi: dict[str, BaseMorphism] = {}
    for b in b_shape.in_degree_order():
        a = pm.alpha[b]
        sd_f = rf_f.details[a]
        sd_t = rf_t.details[b]
        strict_b = b_shape.strict_downset(b)
        index: dict[tuple, str] = {}
        for e in sd_t.pullback.carrier:
            key = (tuple(sd_t.to_lower[b2](e) for b2 in strict_b), sd_t.to_fiber(e))
            index[key] = e
        mapping = {}
        for e in sd_f.pullback.carrier:
            fam = tuple(chi[b2](sd_f.to_lower[pm.alpha[b2]](e)) for b2 in strict_b)
            key = (fam, pm.psi[b](sd_f.to_fiber(e)))
            if key not in index:
                raise FactorizeError(f"induced pullback map undefined at {b!r}")
            mapping[e] = index[key]
        k = BaseMorphism(sd_f.pullback, sd_t.pullback, mapping)
        chi[b] = factorize_mid_map(sd_f.into_pullback, sd_t.into_pullback, pm.phi[b], k)
    return ChiMap(dict(pm.alpha), chi)


def functorial_factorization_pro(
    f: NatTrans,
    t: NatTrans | None = None,
    pm: ArrowPreMorphism | None = None,
) -> tuple[ReedyFactorization, ReedyFactorization | None, ChiMap | None]:
    """The arrow-level section: factor both arrow objects and, when a
    pre-morphism between them is given, produce the middle map."""
    rf_f = reedy(f)
    if t is None or pm is None:
        return rf_f, None, None
    rf_t = reedy(t)
    chim = chi_construct(f, t, pm, rf_f, rf_t)
    return rf_f, rf_t, chim
