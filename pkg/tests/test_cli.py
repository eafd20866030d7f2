import json
from importlib import resources

import pytest
from click.testing import CliRunner

from profact.cli import main


def fixture(name):
    return str(resources.files("profact").joinpath("fixtures", name))


@pytest.fixture
def runner():
    return CliRunner()


def test_reedy_success_matches_golden(runner):
    result = runner.invoke(main, ["reedy", fixture("identity_over_v.json")])
    assert result.exit_code == 0
    golden = resources.files("profact").joinpath("fixtures", "reedy_identity_over_v.json").read_text()
    assert json.loads(result.output) == json.loads(golden)


def test_reedy_missing_file_is_parse_error(runner):
    result = runner.invoke(main, ["reedy", "no_such_file.json"])
    assert result.exit_code == 3
    assert "file not found" in result.output


def test_reedy_invalid_input_is_parse_error(runner):
    result = runner.invoke(main, ["reedy", fixture("broken_naturality.json")])
    assert result.exit_code == 3
    assert "naturality" in result.output


def test_reedy_malformed_json(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    result = runner.invoke(main, ["reedy", str(bad)])
    assert result.exit_code == 3
    assert "line 1" in result.output


def test_reedy_text_format_and_output_file(runner, tmp_path):
    out = tmp_path / "report.txt"
    result = runner.invoke(
        main,
        ["reedy", fixture("identity_over_v.json"), "--format", "text", "-o", str(out)],
    )
    assert result.exit_code == 0
    assert "report.composite_equals_input: True" in out.read_text()


def test_lift_success(runner):
    result = runner.invoke(main, ["lift", fixture("lift_over_v.json")])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert all(payload["report"].values())


def test_cofinalize_success(runner):
    result = runner.invoke(
        main, ["cofinalize", fixture("one_object.json"), "--levels", "1", "--reysha-cap", "2"]
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["report"]["directed"] is True
    assert all(r["connectivity"] != "refuted" for r in payload["report"]["cofinality"])


def test_cofinalize_rejects_non_directed(runner):
    result = runner.invoke(main, ["cofinalize", fixture("parallel_pair.json")])
    assert result.exit_code == 1


def test_cofinalize_budget_exit(runner, monkeypatch):
    monkeypatch.setenv("PROFACT_ELEMENT_CAP", "5")
    result = runner.invoke(main, ["cofinalize", fixture("one_object.json"), "--levels", "2"])
    assert result.exit_code == 2


def test_merge_same_premorphism(runner):
    result = runner.invoke(
        main,
        [
            "merge",
            "-F", fixture("merge_tower_F.json"),
            "-G", fixture("merge_tower_G.json"),
            "-p", fixture("merge_p.json"),
            "-q", fixture("merge_p.json"),
        ],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["report"] == {"dominates_first": True, "dominates_second": True}


def test_merge_different_components_fails(runner):
    result = runner.invoke(
        main,
        [
            "merge",
            "-F", fixture("merge_tower_F.json"),
            "-G", fixture("merge_tower_G.json"),
            "-p", fixture("merge_p.json"),
            "-q", fixture("merge_q.json"),
        ],
    )
    assert result.exit_code == 1
    assert "not colim-equal" in result.output


def test_check_directed_category_with_witness(runner):
    result = runner.invoke(main, ["check", "directed-category", fixture("parallel_pair.json")])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["directed"] is False
    assert payload["witness"]["axiom"] == 3


def test_check_directed_category_true(runner):
    result = runner.invoke(main, ["check", "directed-category", fixture("chain3.json")])
    assert result.exit_code == 0
    assert json.loads(result.output) == {"directed": True, "schema_version": 1}


def test_check_special(runner):
    result = runner.invoke(main, ["check", "special", fixture("identity_over_v.json")])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["special"] is True and payload["class"] == "M"


def test_check_pm_valid(runner):
    result = runner.invoke(
        main,
        [
            "check", "pm-valid", fixture("merge_p.json"),
            "-F", fixture("merge_tower_F.json"),
            "-G", fixture("merge_tower_G.json"),
        ],
    )
    assert result.exit_code == 0
    assert json.loads(result.output)["valid"] is True


def test_check_pm_leq_reflexive(runner):
    result = runner.invoke(
        main,
        [
            "check", "pm-leq", fixture("merge_p.json"),
            "-F", fixture("merge_tower_F.json"),
            "-G", fixture("merge_tower_G.json"),
            "-q", fixture("merge_p.json"),
        ],
    )
    assert result.exit_code == 0
    assert json.loads(result.output)["leq"] is True


def test_check_pm_leq_requires_second(runner):
    result = runner.invoke(
        main,
        [
            "check", "pm-leq", fixture("merge_p.json"),
            "-F", fixture("merge_tower_F.json"),
            "-G", fixture("merge_tower_G.json"),
        ],
    )
    assert result.exit_code == 3


def test_suite_deterministic(runner):
    first = runner.invoke(main, ["suite", "--seed", "11", "--cases", "3"])
    second = runner.invoke(main, ["suite", "--seed", "11", "--cases", "3"])
    assert first.exit_code == 0
    assert first.output == second.output
    payload = json.loads(first.output)
    assert payload["seed"] == 11 and payload["all_pass"] is True
