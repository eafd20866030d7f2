import random

import pytest

from profact.base import BaseObject, compose, identity, is_in_m, morphism
from profact.diagrams import Diagram, NatTrans
from profact.lifting import (
    ConeLift,
    LiftingError,
    LiftingProblem,
    SearchExhausted,
    has_lift_bruteforce,
    lift_against_special,
    retract_exhibitor,
    solve_square_levelwise,
)
from profact.poset import FinPoset
from profact.randgen import random_special_problem


def test_bruteforce_injective_vs_surjective_always_lifts():
    a, b = BaseObject(("a1",)), BaseObject(("b1", "b2"))
    x, y = BaseObject(("x1", "x2")), BaseObject(("y",))
    g = morphism(a, b, {"a1": "b1"})
    f = morphism(x, y, {"x1": "y", "x2": "y"})
    top = morphism(a, x, {"a1": "x1"})
    bottom = morphism(b, y, {"b1": "y", "b2": "y"})
    found, witness = has_lift_bruteforce(g, f, top, bottom)
    assert found
    assert compose(witness, g) == top
    assert compose(f, witness) == bottom


def test_bruteforce_counterexample_square():
    empty = BaseObject(())
    one = BaseObject(("1",))
    g = morphism(empty, one, {})
    f = morphism(BaseObject(("u",)), BaseObject(("v", "w")), {"u": "v"})
    found, witness = has_lift_bruteforce(g, f, morphism(empty, f.source, {}), morphism(one, f.target, {"1": "w"}))
    assert not found and witness is None


def test_bruteforce_identity_right_map():
    a, b = BaseObject(("a1",)), BaseObject(("b1",))
    x = BaseObject(("x1", "x2"))
    g = morphism(a, b, {"a1": "b1"})
    top = morphism(a, x, {"a1": "x2"})
    bottom = morphism(b, x, {"b1": "x2"})
    found, witness = has_lift_bruteforce(g, identity(x), top, bottom)
    assert found and witness == bottom


def test_bruteforce_rejects_non_commuting_square():
    one = BaseObject(("1",))
    two = BaseObject(("a", "b"))
    with pytest.raises(LiftingError):
        has_lift_bruteforce(
            identity(one),
            identity(two),
            morphism(one, two, {"1": "a"}),
            morphism(one, two, {"1": "b"}),
        )


def test_bruteforce_cap():
    big = BaseObject(tuple(f"x{i}" for i in range(101)))
    one = BaseObject(("y",))
    b = BaseObject(("b1", "b2", "b3"))
    g = morphism(BaseObject(()), b, {})
    f = morphism(big, one, {c: "y" for c in big.carrier})
    with pytest.raises(SearchExhausted):
        has_lift_bruteforce(g, f, morphism(g.source, big, {}), morphism(b, one, {c: "y" for c in b.carrier}), cap=10**6)


def single_point_problem():
    pt = FinPoset.make(("p",))
    a, b = BaseObject(("a1",)), BaseObject(("b1", "b2"))
    x, y = BaseObject(("x1", "x2")), BaseObject(("y",))
    g = morphism(a, b, {"a1": "b1"})
    f = morphism(x, y, {"x1": "y", "x2": "y"})
    nt = NatTrans.make(Diagram.make(pt, {"p": x}), Diagram.make(pt, {"p": y}), {"p": f})
    return LiftingProblem(
        g,
        nt,
        {"p": morphism(a, x, {"a1": "x1"})},
        {"p": morphism(b, y, {"b1": "y", "b2": "y"})},
    )


def test_single_point_reduces_to_base_lift():
    problem = single_point_problem()
    cone = lift_against_special(problem)
    assert all(cone.verify(problem).values())
    found, _ = has_lift_bruteforce(
        problem.left, problem.right.at("p"), problem.top["p"], problem.bottom["p"]
    )
    assert found


def test_two_chain_identity_transformation():
    ch = FinPoset.make(("0", "1"), [("0", "1")])
    x = BaseObject(("x1", "x2"))
    diag = Diagram.make(ch, {"0": x, "1": x}, {("1", "0"): identity(x)})
    ident = NatTrans.make(diag, diag, {t: identity(x) for t in ch.elements})
    a, b = BaseObject(("a1",)), BaseObject(("b1", "b2"))
    g = morphism(a, b, {"a1": "b1"})
    top = {t: morphism(a, x, {"a1": "x1"}) for t in ch.elements}
    bottom = {t: morphism(b, x, {"b1": "x1", "b2": "x2"}) for t in ch.elements}
    problem = LiftingProblem(g, ident, top, bottom)
    cone = lift_against_special(problem)
    assert all(cone.verify(problem).values())
    # constant down the chain
    assert cone.components["0"] == cone.components["1"]


def test_randomized_special_problems_with_oracle_crosscheck():
    rng = random.Random(41)
    for _ in range(25):
        problem = random_special_problem(rng, 4, 3)
        cone = lift_against_special(problem)
        assert all(cone.verify(problem).values())
        for t in problem.right.shape.elements:
            try:
                found, _ = has_lift_bruteforce(
                    problem.left, problem.right.at(t), problem.top[t], problem.bottom[t]
                )
            except SearchExhausted:
                continue
            assert found


def test_lift_rejects_non_special_right():
    ch = FinPoset.make(("0", "1"), [("0", "1")])
    ab = BaseObject(("a", "b"))
    one = BaseObject(("z",))
    src = Diagram.make(ch, {"0": ab, "1": ab}, {("1", "0"): identity(ab)})
    tgt = Diagram.make(ch, {"0": one, "1": ab}, {("1", "0"): morphism(ab, one, {"a": "z", "b": "z"})})
    nt = NatTrans.make(src, tgt, {"1": identity(ab), "0": morphism(ab, one, {"a": "z", "b": "z"})})
    empty = BaseObject(())
    problem = LiftingProblem(
        morphism(empty, empty, {}),
        nt,
        {t: morphism(empty, ab, {}) for t in ch.elements},
        {t: morphism(empty, one, {}) for t in ch.elements},
    )
    with pytest.raises(LiftingError):
        lift_against_special(problem)


def test_retract_exhibitor_surjective():
    x, y = BaseObject(("1", "2")), BaseObject(("p",))
    h = morphism(x, y, {"1": "p", "2": "p"})
    diagram = retract_exhibitor(h)
    assert diagram.report == {
        "section_retracts": True,
        "left_square": True,
        "right_square": True,
    }
    assert is_in_m(diagram.surjection)


def test_retract_exhibitor_identity():
    x = BaseObject(("1", "2"))
    diagram = retract_exhibitor(identity(x))
    assert all(diagram.report.values())


def test_retract_exhibitor_rejects_without_rlp():
    # injective but not surjective: the bottom can reach the missed point
    h = morphism(BaseObject(("1",)), BaseObject(("p", "q")), {"1": "p"})
    with pytest.raises(LiftingError):
        retract_exhibitor(h)


def test_solve_square_levelwise_single_point():
    pt = FinPoset.make(("p",))
    x, y = BaseObject(("x1", "x2")), BaseObject(("y",))
    diag = Diagram.make(pt, {"p": x})
    tower = NatTrans.make(diag, diag, {"p": identity(x)})
    f = morphism(x, y, {"x1": "y", "x2": "y"})
    lift = solve_square_levelwise(tower, f, "p", identity(x), morphism(x, y, {"x1": "y", "x2": "y"}))
    assert set(lift) == {"p"}
    assert compose(f, lift["p"]) == morphism(x, y, {"x1": "y", "x2": "y"})


def test_solve_square_levelwise_composes_with_restriction():
    ch = FinPoset.make(("0", "1"), [("0", "1")])
    x, y = BaseObject(("x1", "x2")), BaseObject(("y",))
    diag = Diagram.make(ch, {"0": x, "1": x}, {("1", "0"): identity(x)})
    tower = NatTrans.make(diag, diag, {t: identity(x) for t in ch.elements})
    f = morphism(x, y, {"x1": "y", "x2": "y"})
    bottom = morphism(x, y, {"x1": "y", "x2": "y"})
    lift = solve_square_levelwise(tower, f, "0", identity(x), bottom)
    assert lift["1"] == compose(lift["0"], diag.arrow("1", "0"))


def test_solve_square_levelwise_identity_right():
    pt = FinPoset.make(("p",))
    x = BaseObject(("x1", "x2"))
    diag = Diagram.make(pt, {"p": x})
    tower = NatTrans.make(diag, diag, {"p": identity(x)})
    bottom = morphism(x, x, {"x1": "x2", "x2": "x1"})
    lift = solve_square_levelwise(tower, identity(x), "p", bottom, bottom)
    assert lift["p"] == bottom
