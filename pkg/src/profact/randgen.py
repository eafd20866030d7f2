"""Seeded random generators for posets, diagrams, transformations and
pre-morphisms.

Everything here is driven by a caller-supplied random.Random, so identical
seeds give identical structures.  Diagrams and transformations are built in
degree order by choosing random maps into the appropriate (matching) limit,
which makes functoriality and naturality hold by construction; validity is
still re-checked by the constructors.
"""

from __future__ import annotations

import random

from .base import BaseMorphism, BaseObject, compose, identity, pullback
from .diagrams import Diagram, NatTrans, limit_map, limit_over_poset
from .factorize import ArrowPreMorphism
from .poset import FinPoset, Reysha
from .procalc import PreMorphism, ProObject, RawMorphism


def random_poset(rng: random.Random, max_elems: int, edge_prob: float = 0.45) -> FinPoset:
    n = rng.randint(1, max_elems)
    elements = tuple(f"e{i}" for i in range(n))
    pairs = [
        (elements[i], elements[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_prob
    ]
    return FinPoset.make(elements, pairs)


def random_subposet(rng: random.Random, poset: FinPoset) -> tuple[FinPoset, dict[str, str]]:
    """A nonempty induced subposet together with the inclusion index map."""
    size = rng.randint(1, len(poset.elements))
    members = sorted(rng.sample(poset.elements, size), key=poset.index)
    sub = poset.restrict(members)
    return sub, {x: x for x in members}


def random_object(rng: random.Random, max_size: int, prefix: str) -> BaseObject:
    return BaseObject(tuple(f"{prefix}{i}" for i in range(rng.randint(1, max_size))))


def random_map(rng: random.Random, source: BaseObject, target: BaseObject) -> BaseMorphism:
    if source.carrier and not target.carrier:
        raise ValueError("no map into an empty target from a nonempty source")
    return BaseMorphism(
        source, target, {x: rng.choice(target.carrier) for x in source.carrier}
    )


def random_injection(rng: random.Random, source: BaseObject, target: BaseObject) -> BaseMorphism:
    values = rng.sample(target.carrier, len(source.carrier))
    return BaseMorphism(source, target, dict(zip(source.carrier, values)))


def _estimated_cost_ok(shape: FinPoset, fiber_sizes: dict[str, int], cap: int = 20000) -> bool:
    """A cheap upper bound on the intermediate limit sizes the Reedy
    construction would see over this shape, used to resample pathological
    antichain-heavy inputs instead of grinding through them."""
    bound: dict[str, int] = {}
    for x in shape.in_degree_order():
        strict = shape.strict_downset(x)
        maximal = [s for s in strict if not any(shape.lt(s, s2) for s2 in strict)]
        lim = 1
        for m in maximal:
            lim *= bound[m]
        if lim > cap:
            return False
        bound[x] = fiber_sizes[x] + lim * fiber_sizes[x] + 1
    return True


def random_diagram(
    rng: random.Random, shape: FinPoset, max_fiber: int, prefix: str = "d"
) -> Diagram:
    """Random functor: each fiber maps randomly into the limit of the part
    already built below it."""
    objects: dict[str, BaseObject] = {}
    arrows: dict[tuple[str, str], BaseMorphism] = {}
    for x in shape.in_degree_order():
        strict = shape.strict_downset(x)
        partial = Diagram.make(
            shape.restrict(strict),
            {s: objects[s] for s in strict},
            {p: a for p, a in arrows.items() if p[0] in strict and p[1] in strict},
        )
        lim_obj, lim_proj = limit_over_poset(partial)
        size = rng.randint(1, max_fiber) if lim_obj.carrier else 0
        fiber = BaseObject(tuple(f"{prefix}{x}_{i}" for i in range(size)))
        objects[x] = fiber
        into = random_map(rng, fiber, lim_obj) if fiber.carrier else BaseMorphism(fiber, lim_obj, {})
        arrows[(x, x)] = identity(fiber)
        for s in strict:
            arrows[(x, s)] = compose(lim_proj[s], into)
    return Diagram.make(shape, objects, arrows)


def random_nattrans(rng: random.Random, shape: FinPoset, max_fiber: int) -> NatTrans:
    """Random transformation: target first, then the source jointly with
    the components via random maps into the matching pullbacks."""
    while True:
        target = random_diagram(rng, shape, max_fiber, prefix="y")
        if _estimated_cost_ok(shape, {x: len(target.at(x)) for x in shape.elements}):
            break
    objects: dict[str, BaseObject] = {}
    arrows: dict[tuple[str, str], BaseMorphism] = {}
    components: dict[str, BaseMorphism] = {}
    for x in shape.in_degree_order():
        strict = shape.strict_downset(x)
        partial_src = Diagram.make(
            shape.restrict(strict),
            {s: objects[s] for s in strict},
            {p: a for p, a in arrows.items() if p[0] in strict and p[1] in strict},
        )
        src_limit = limit_over_poset(partial_src)
        tgt_limit = limit_over_poset(target.restrict(Reysha(shape, strict)))
        comp_map = limit_map(src_limit, tgt_limit, {s: components[s] for s in strict})
        fiber_map = limit_map(
            (target.at(x), {s: target.arrow(x, s) for s in strict}),
            tgt_limit,
            {s: identity(target.at(s)) for s in strict},
        )
        pb = pullback(fiber_map, comp_map)
        carrier, proj_fiber, proj_limit = pb
        size = rng.randint(1, max_fiber) if carrier.carrier else 0
        fiber = BaseObject(tuple(f"x{x}_{i}" for i in range(size)))
        into = random_map(rng, fiber, carrier) if fiber.carrier else BaseMorphism(fiber, carrier, {})
        objects[x] = fiber
        arrows[(x, x)] = identity(fiber)
        for s in strict:
            arrows[(x, s)] = compose(compose(src_limit[1][s], proj_limit), into)
        components[x] = compose(proj_fiber, into)
    source = Diagram.make(shape, objects, arrows)
    return NatTrans.make(source, target, components)


def reindex(diagram: Diagram, alpha: dict[str, str], shape: FinPoset) -> Diagram:
    """Restrict a diagram along a strictly increasing index map."""
    return Diagram.make(
        shape,
        {b: diagram.at(alpha[b]) for b in shape.elements},
        {
            (b, b2): diagram.arrow(alpha[b], alpha[b2])
            for b in shape.elements
            for b2 in shape.elements
            if shape.le(b2, b)
        },
    )


def junk_extend(
    rng: random.Random, source: Diagram, max_junk: int = 2, prefix: str = "n"
) -> tuple[Diagram, NatTrans]:
    """A random natural transformation out of a fixed source: each target
    fiber is the source fiber plus freshly chosen junk mapped into the
    limit of the part below."""
    shape = source.shape
    objects: dict[str, BaseObject] = {}
    arrows: dict[tuple[str, str], BaseMorphism] = {}
    components: dict[str, BaseMorphism] = {}
    for b in shape.in_degree_order():
        strict = shape.strict_downset(b)
        partial = Diagram.make(
            shape.restrict(strict),
            {s: objects[s] for s in strict},
            {p: a for p, a in arrows.items() if p[0] in strict and p[1] in strict},
        )
        lim_obj, lim_proj = limit_over_poset(partial)
        junk_size = rng.randint(0, max_junk) if lim_obj.carrier else 0
        originals = tuple("o:" + x for x in source.at(b).carrier)
        junk = tuple(f"{prefix}:{i}" for i in range(junk_size))
        fiber = BaseObject(originals + junk)
        objects[b] = fiber
        components[b] = BaseMorphism(
            source.at(b), fiber, {x: "o:" + x for x in source.at(b).carrier}
        )
        junk_anchor = {j: rng.choice(lim_obj.carrier) for j in junk}
        arrows[(b, b)] = identity(fiber)
        for s in strict:
            mapping = {}
            for x in source.at(b).carrier:
                mapping["o:" + x] = components[s](source.arrow(b, s)(x))
            for j in junk:
                mapping[j] = lim_proj[s](junk_anchor[j])
            arrows[(b, s)] = BaseMorphism(fiber, objects[s], mapping)
    extended = Diagram.make(shape, objects, arrows)
    return extended, NatTrans.make(source, extended, components)


def pushout_diagram(
    into_left: NatTrans, into_right: NatTrans
) -> tuple[Diagram, NatTrans, NatTrans]:
    """The levelwise pushout of a span of transformations, with the two
    canonical inclusions."""
    if into_left.source is not into_right.source and into_left.source != into_right.source:
        raise ValueError("span legs must share a source")
    shape = into_left.shape
    left, right = into_left.target, into_right.target
    classes: dict[str, dict[str, str]] = {}
    objects: dict[str, BaseObject] = {}
    for b in shape.elements:
        tagged = ["l:" + x for x in left.at(b).carrier] + ["r:" + y for y in right.at(b).carrier]
        parent = {t: t for t in tagged}

        def find(t):
            while parent[t] != t:
                parent[t] = parent[parent[t]]
                t = parent[t]
            return t

        for e in into_left.source.at(b).carrier:
            a, c = find("l:" + into_left.at(b)(e)), find("r:" + into_right.at(b)(e))
            if a != c:
                parent[a] = c
        label: dict[str, str] = {}
        for t in tagged:
            root = find(t)
            if root not in label:
                label[root] = f"q{len(label)}"
        classes[b] = {t: label[find(t)] for t in tagged}
        objects[b] = BaseObject(tuple(dict.fromkeys(classes[b][t] for t in tagged)))
    arrows: dict[tuple[str, str], BaseMorphism] = {}
    for b in shape.elements:
        for b2 in shape.elements:
            if shape.le(b2, b):
                mapping: dict[str, str] = {}
                for x in left.at(b).carrier:
                    value = classes[b2]["l:" + left.arrow(b, b2)(x)]
                    key = classes[b]["l:" + x]
                    if mapping.setdefault(key, value) != value:
                        raise ValueError("pushout arrow ill-defined")
                for y in right.at(b).carrier:
                    value = classes[b2]["r:" + right.arrow(b, b2)(y)]
                    key = classes[b]["r:" + y]
                    if mapping.setdefault(key, value) != value:
                        raise ValueError("pushout arrow ill-defined")
                arrows[(b, b2)] = BaseMorphism(objects[b], objects[b2], mapping)
    pushout = Diagram.make(shape, objects, arrows)
    in_left = NatTrans.make(
        left,
        pushout,
        {
            b: BaseMorphism(left.at(b), objects[b], {x: classes[b]["l:" + x] for x in left.at(b).carrier})
            for b in shape.elements
        },
    )
    in_right = NatTrans.make(
        right,
        pushout,
        {
            b: BaseMorphism(right.at(b), objects[b], {y: classes[b]["r:" + y] for y in right.at(b).carrier})
            for b in shape.elements
        },
    )
    return pushout, in_left, in_right


def random_arrow_pre_morphism(
    rng: random.Random, f: NatTrans, max_junk: int = 2
) -> tuple[NatTrans, ArrowPreMorphism]:
    """A random target arrow object plus a valid pre-morphism from f to it.

    The index map is a random subposet inclusion; the top layer is a junk
    extension of the reindexed source; the bottom layer is a junk extension
    of the pushout, which makes the square commute by construction.
    """
    b_shape, alpha = random_subposet(rng, f.shape)
    e_alpha = reindex(f.source, alpha, b_shape)
    f_alpha_tgt = reindex(f.target, alpha, b_shape)
    f_alpha = NatTrans.make(e_alpha, f_alpha_tgt, {b: f.at(alpha[b]) for b in b_shape.elements})
    top_diagram, phi = junk_extend(rng, e_alpha, max_junk, prefix="k")
    pushed, in_top, in_bottom = pushout_diagram(phi, f_alpha)
    bottom_diagram, theta = junk_extend(rng, pushed, max_junk, prefix="g")
    t = NatTrans.make(
        top_diagram,
        bottom_diagram,
        {b: compose(theta.at(b), in_top.at(b)) for b in b_shape.elements},
    )
    pm = ArrowPreMorphism(
        dict(alpha),
        {b: phi.at(b) for b in b_shape.elements},
        {b: compose(theta.at(b), in_bottom.at(b)) for b in b_shape.elements},
    )
    pm.validate(f, t)
    return t, pm


def refine_arrow_pre_morphism(
    rng: random.Random, f: NatTrans, t: NatTrans, pm: ArrowPreMorphism
) -> ArrowPreMorphism:
    """A pre-morphism above pm: the index map moves up and the components
    factor through the restriction arrows."""
    a_shape, b_shape = f.shape, t.shape
    for _ in range(8):
        alpha: dict[str, str] = {}
        ok = True
        for b in b_shape.in_degree_order():
            eligible = [
                a
                for a in a_shape.elements
                if a_shape.le(pm.alpha[b], a)
                and all(a_shape.lt(alpha[b2], a) for b2 in b_shape.strict_downset(b))
            ]
            if not eligible:
                ok = False
                break
            alpha[b] = rng.choice(eligible)
        if ok:
            break
    else:
        alpha = dict(pm.alpha)
    refined = ArrowPreMorphism(
        alpha,
        {b: compose(pm.phi[b], f.source.arrow(alpha[b], pm.alpha[b])) for b in b_shape.elements},
        {b: compose(pm.psi[b], f.target.arrow(alpha[b], pm.alpha[b])) for b in b_shape.elements},
    )
    refined.validate(f, t)
    return refined


def random_directed_poset(rng: random.Random, max_elems: int) -> FinPoset:
    """A random poset with a maximum adjoined, hence directed."""
    base = random_poset(rng, max(1, max_elems - 1))
    top = "etop"
    return FinPoset.make(
        base.elements + (top,), list(base.le_pairs) + [(x, top) for x in base.elements]
    )


def random_pro_object(rng: random.Random, max_elems: int, max_fiber: int) -> ProObject:
    shape = random_directed_poset(rng, max_elems)
    diagram = random_diagram(rng, shape, max_fiber, prefix="f")
    return ProObject(shape, diagram, shape.max_degree() + 1)


def random_pre_morphism(
    rng: random.Random, F: ProObject, max_junk: int = 2
) -> tuple[ProObject, PreMorphism]:
    """A random target tower and a valid pre-morphism from F to it."""
    b_shape, alpha = random_subposet(rng, F.shape)
    # a subposet of a directed poset need not be directed; keep the maximum
    if "etop" not in b_shape:
        b_shape = FinPoset.make(
            b_shape.elements + ("etop",),
            list(b_shape.le_pairs) + [(x, "etop") for x in b_shape.elements],
        )
        alpha = dict(alpha)
        alpha["etop"] = "etop"
    reindexed = reindex(F.diagram, alpha, b_shape)
    target, theta = junk_extend(rng, reindexed, max_junk, prefix="g")
    G = ProObject(b_shape, target, b_shape.max_degree() + 1)
    pm = PreMorphism(dict(alpha), {b: theta.at(b) for b in b_shape.elements})
    return G, pm


def refine_pre_morphism(
    rng: random.Random, F: ProObject, G: ProObject, pm: PreMorphism
) -> PreMorphism:
    a_shape, b_shape = F.shape, G.shape
    for _ in range(8):
        alpha: dict[str, str] = {}
        ok = True
        for b in b_shape.in_degree_order():
            eligible = [
                a
                for a in a_shape.elements
                if a_shape.le(pm.alpha[b], a)
                and all(a_shape.lt(alpha[b2], a) for b2 in b_shape.strict_downset(b))
            ]
            if not eligible:
                ok = False
                break
            alpha[b] = rng.choice(eligible)
        if ok:
            break
    else:
        alpha = dict(pm.alpha)
    return PreMorphism(
        alpha,
        {b: compose(pm.phi[b], F.arrow(alpha[b], pm.alpha[b])) for b in b_shape.elements},
    )


def random_special_problem(rng: random.Random, poset_max: int, set_max: int):
    """A solvable lifting problem: an injection against the special
    surjective part of a random factorization, with cones drawn from the
    limits of the two layers."""
    from .factorize import reedy
    from .lifting import LiftingProblem

    shape = random_poset(rng, poset_max)
    nt = random_nattrans(rng, shape, set_max)
    rf = reedy(nt)
    special = rf.right
    lim_mid = limit_over_poset(rf.mid)
    lim_tgt = limit_over_poset(nt.target)
    a_size = rng.randint(0, 2) if lim_mid[0].carrier else 0
    extra = rng.randint(0, 2) if lim_tgt[0].carrier else 0
    A = BaseObject(tuple(f"a{i}" for i in range(a_size)))
    B = BaseObject(tuple(f"b{i}" for i in range(a_size + extra)))
    g = BaseMorphism(A, B, {f"a{i}": f"b{i}" for i in range(a_size)})
    anchor = {x: rng.choice(lim_mid[0].carrier) for x in A.carrier}
    free = {b: rng.choice(lim_tgt[0].carrier) for b in B.carrier[a_size:]}
    top = {}
    bottom = {}
    for t in shape.elements:
        top[t] = BaseMorphism(A, rf.mid.at(t), {x: lim_mid[1][t](anchor[x]) for x in A.carrier})
        mapping = {f"b{i}": special.at(t)(top[t](f"a{i}")) for i in range(a_size)}
        mapping.update({b: lim_tgt[1][t](free[b]) for b in B.carrier[a_size:]})
        bottom[t] = BaseMorphism(B, nt.target.at(t), mapping)
    return LiftingProblem(g, special, top, bottom)


def random_raw_morphism(
    rng: random.Random, F: ProObject, G: ProObject, pm: PreMorphism
) -> RawMorphism:
    """Scramble a valid pre-morphism into raw representative data by
    re-indexing each component independently (no monotonicity kept)."""
    rep: dict[str, tuple[str, BaseMorphism]] = {}
    for b in G.shape.elements:
        ups = [a for a in F.shape.elements if F.shape.le(pm.alpha[b], a)]
        a = rng.choice(ups)
        rep[b] = (a, compose(pm.phi[b], F.arrow(a, pm.alpha[b])))
    return RawMorphism(rep)
