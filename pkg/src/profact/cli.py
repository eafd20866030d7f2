"""Command line interface: factorization, middle-map construction, lifting,
tower building, pre-morphism merging, structure checks and the property
suite.

Exit codes: 0 success, 1 verification failure, 2 search or budget
exhausted, 3 parse error.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .category import is_directed_category
from .cofinalize import BudgetExceeded, CofinalizeError, build_tower, check_cofinality, check_tower_directedness
from .diagrams import is_levelwise, is_special
from .factorize import FactorizeError, chi_construct, reedy
from .lifting import LiftingError, SearchExhausted, lift_against_special
from .poset import is_directed_poset
from .procalc import ProCalcError, TruncationExhausted, dominate, is_pre_morphism, pm_leq
from .report import property_suite
from . import serialize
from .serialize import ParseError, dumps

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_EXHAUSTED = 2
EXIT_PARSE = 3


def _load(path: str) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ParseError("file not found", path)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}", path)


def _emit(payload: dict, output: str | None, fmt: str) -> None:
    if fmt == "json":
        text = dumps(payload)
    else:
        lines = []

        def render(prefix: str, value) -> None:
            if isinstance(value, dict):
                for key in sorted(value):
                    render(f"{prefix}{key}.", value[key])
            elif isinstance(value, list):
                for i, item in enumerate(value):
                    render(f"{prefix}{i}.", item)
            else:
                lines.append(f"{prefix[:-1]}: {value}")

        render("", payload)
        text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


fmt_option = click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
out_option = click.option("-o", "--output", default=None, help="Write the report to a file.")


@click.group()
def main() -> None:
    """Reedy factorizations over finite posets and their pro-level calculus."""


@main.command("reedy")
@click.argument("input_path")
@out_option
@fmt_option
def reedy_cmd(input_path: str, output: str | None, fmt: str) -> None:
    """Factor a transformation into levelwise-injective then special-surjective."""
    try:
        nt = serialize.nattrans_from_json(_load(input_path), input_path)
    except ParseError as exc:
        _fail(str(exc), EXIT_PARSE)
    rf = reedy(nt)
    _emit(serialize.reedy_to_json(rf), output, fmt)
    sys.exit(EXIT_OK if all(rf.report.values()) else EXIT_VERIFICATION)


@main.command("chi")
@click.option("-f", "--source-arrow", "f_path", required=True)
@click.option("-t", "--target-arrow", "t_path", required=True)
@click.option("-p", "--pre-morphism", "pm_path", required=True)
@out_option
@fmt_option
def chi_cmd(f_path: str, t_path: str, pm_path: str, output: str | None, fmt: str) -> None:
    """Build the middle map induced by an arrow-level pre-morphism."""
    try:
        f = serialize.nattrans_from_json(_load(f_path), f_path)
        t = serialize.nattrans_from_json(_load(t_path), t_path)
        pm = serialize.arrow_pre_morphism_from_json(_load(pm_path), f, t, pm_path)
    except ParseError as exc:
        _fail(str(exc), EXIT_PARSE)
    try:
        rf_f, rf_t = reedy(f), reedy(t)
        chim = chi_construct(f, t, pm, rf_f, rf_t)
    except FactorizeError as exc:
        _fail(str(exc), EXIT_VERIFICATION)
    verification = chim.verify(pm, rf_f, rf_t)
    _emit(serialize.chi_to_json(chim, verification), output, fmt)
    sys.exit(EXIT_OK if all(verification.values()) else EXIT_VERIFICATION)


@main.command("lift")
@click.argument("input_path")
@out_option
@fmt_option
def lift_cmd(input_path: str, output: str | None, fmt: str) -> None:
    """Solve a lifting problem against a special surjective transformation."""
    try:
        problem = serialize.lifting_problem_from_json(_load(input_path), input_path)
    except ParseError as exc:
        _fail(str(exc), EXIT_PARSE)
    try:
        cone = lift_against_special(problem)
    except SearchExhausted as exc:
        _fail(str(exc), EXIT_EXHAUSTED)
    except LiftingError as exc:
        _fail(str(exc), EXIT_VERIFICATION)
    verification = cone.verify(problem)
    _emit(serialize.cone_lift_to_json(cone, verification), output, fmt)
    sys.exit(EXIT_OK if all(verification.values()) else EXIT_VERIFICATION)


@main.command("cofinalize")
@click.argument("input_path")
@click.option("--levels", default=2, show_default=True)
@click.option("--reysha-cap", default=3, show_default=True)
@out_option
@fmt_option
def cofinalize_cmd(input_path: str, levels: int, reysha_cap: int, output: str | None, fmt: str) -> None:
    """Build the level tower over a directed category and verify it."""
    try:
        cat = serialize.category_from_json(_load(input_path), input_path)
    except ParseError as exc:
        _fail(str(exc), EXIT_PARSE)
    element_cap = int(os.environ.get("PROFACT_ELEMENT_CAP", 10**4))
    try:
        tower = build_tower(cat, levels=levels, reysha_cap=reysha_cap, element_cap=element_cap)
    except BudgetExceeded as exc:
        _fail(str(exc), EXIT_EXHAUSTED)
    except CofinalizeError as exc:
        _fail(str(exc), EXIT_VERIFICATION)
    directed = check_tower_directedness(tower)
    reports = check_cofinality(tower)
    payload = serialize.tower_to_json(tower, reports, directed)
    _emit(payload, output, fmt)
    ok = all(tower.verify().values()) and all(r.nonempty for r in reports)
    sys.exit(EXIT_OK if ok else EXIT_VERIFICATION)


@main.command("merge")
@click.option("-F", "--source-tower", "f_path", required=True)
@click.option("-G", "--target-tower", "g_path", required=True)
@click.option("-p", "--first", "p_path", required=True)
@click.option("-q", "--second", "q_path", required=True)
@out_option
@fmt_option
def merge_cmd(f_path: str, g_path: str, p_path: str, q_path: str, output: str | None, fmt: str) -> None:
    """Merge two pre-morphisms presenting the same map into a common bound."""
    try:
        F = serialize.pro_object_from_json(_load(f_path), f_path)
        G = serialize.pro_object_from_json(_load(g_path), g_path)
        p = serialize.pre_morphism_from_json(_load(p_path), F, G, p_path)
        q = serialize.pre_morphism_from_json(_load(q_path), F, G, q_path)
    except ParseError as exc:
        _fail(str(exc), EXIT_PARSE)
    try:
        r = dominate(F, G, p, q)
    except ProCalcError as exc:
        _fail(str(exc), EXIT_VERIFICATION)
    except TruncationExhausted as exc:
        _fail(str(exc), EXIT_EXHAUSTED)
    payload = {
        "result": serialize.pre_morphism_to_json(r),
        "report": {
            "dominates_first": pm_leq(F, G, p, r),
            "dominates_second": pm_leq(F, G, q, r),
        },
    }
    _emit(payload, output, fmt)
    sys.exit(EXIT_OK if all(payload["report"].values()) else EXIT_VERIFICATION)


@main.command("check")
@click.argument(
    "what",
    type=click.Choice(
        ["directed-category", "directed-poset", "levelwise", "special", "pm-valid", "pm-leq"]
    ),
)
@click.argument("input_path")
@click.option("--cls", type=click.Choice(["N", "M"]), default=None, help="Morphism class for levelwise/special checks.")
@click.option("-F", "--source-tower", "f_path", default=None)
@click.option("-G", "--target-tower", "g_path", default=None)
@click.option("-q", "--second", "q_path", default=None, help="Second pre-morphism for pm-leq.")
@out_option
@fmt_option
def check_cmd(
    what: str,
    input_path: str,
    cls: str | None,
    f_path: str | None,
    g_path: str | None,
    q_path: str | None,
    output: str | None,
    fmt: str,
) -> None:
    """Report a structural verdict; queries always exit 0."""
    try:
        if what == "directed-category":
            cat = serialize.category_from_json(_load(input_path), input_path)
            directed, witness = is_directed_category(cat)
            payload = {"directed": directed}
            if witness is not None:
                payload["witness"] = {"axiom": witness.axiom, "detail": list(witness.detail)}
        elif what == "directed-poset":
            poset = serialize.poset_from_json(_load(input_path), input_path)
            payload = {"directed": is_directed_poset(poset)}
        elif what in ("levelwise", "special"):
            nt = serialize.nattrans_from_json(_load(input_path), input_path)
            chosen = cls or ("N" if what == "levelwise" else "M")
            verdict = is_levelwise(nt, chosen) if what == "levelwise" else is_special(nt, chosen)
            payload = {what: verdict, "class": chosen}
        else:
            if not f_path or not g_path:
                _fail(f"{what} requires -F and -G tower files", EXIT_PARSE)
            F = serialize.pro_object_from_json(_load(f_path), f_path)
            G = serialize.pro_object_from_json(_load(g_path), g_path)
            pm = serialize.pre_morphism_from_json(_load(input_path), F, G, input_path)
            if what == "pm-valid":
                payload = {"valid": is_pre_morphism(F, G, pm.alpha, pm.phi)}
            else:
                if not q_path:
                    _fail("pm-leq requires a second pre-morphism via -q", EXIT_PARSE)
                second = serialize.pre_morphism_from_json(_load(q_path), F, G, q_path)
                payload = {"leq": pm_leq(F, G, pm, second)}
    except ParseError as exc:
        _fail(str(exc), EXIT_PARSE)
    _emit(payload, output, fmt)
    sys.exit(EXIT_OK)


@main.command("suite")
@click.option("--seed", default=0, show_default=True)
@click.option("--cases", default=50, show_default=True)
@click.option("--poset-max", default=5, show_default=True)
@click.option("--set-max", default=4, show_default=True)
@out_option
@fmt_option
def suite_cmd(seed: int, cases: int, poset_max: int, set_max: int, output: str | None, fmt: str) -> None:
    """Run the randomized law suite across all modules."""
    report = property_suite(seed=seed, cases=cases, poset_max=poset_max, set_max=set_max)
    _emit(report, output, fmt)
    sys.exit(EXIT_OK if report["all_pass"] else EXIT_VERIFICATION)


if __name__ == "__main__":
    main()
