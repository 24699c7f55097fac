"""End-to-end CLI behavior: exit codes, report bytes, env seed, @file args."""
import json
import math

import pytest
from click.testing import CliRunner

from conftest import BALL2, GAUSS_I2
from minmax_hyper.cli import main

LAW = json.dumps(GAUSS_I2)
SET = json.dumps(BALL2)


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args, env=None):
    return runner.invoke(main, list(args), env=env, catch_exceptions=False)


def test_constants_golden_and_exit_zero(runner):
    res = invoke(runner, "constants", "--C", "2", "--no-timestamp")
    assert res.exit_code == 0
    env = json.loads(res.output)
    assert env["report"]["truncation_scale"] == 8.0
    assert env["report"]["doubling_constant"] == 32.0
    assert env["report"]["scaled_tail_lower_bound"] == 0.0625
    assert env["report"]["small_ball_rate"] == pytest.approx(6 * math.sqrt(2))
    assert "timestamp" not in env


def test_moments_word_golden(runner):
    res = invoke(runner, "moments", "--dist", "uniform(0,1)",
                 "--word", "max2.min3")
    assert res.exit_code == 0
    env = json.loads(res.output)
    assert env["report"]["moment"] == pytest.approx(5.0 / 14.0, rel=1e-9)
    assert env["verdict"] == "pass"


def test_text_format_marks_assertions(runner):
    res = invoke(runner, "moments", "--dist", "exp(1)", "--word", "min2",
                 "--mc-check", "--samples", "100000", "--format", "text")
    assert res.exit_code == 0
    assert "verdict: pass" in res.output
    assert "[ok] word-moment-mc" in res.output


def test_parse_error_exits_3(runner):
    res = invoke(runner, "moments", "--dist", "notalaw(2)")
    assert res.exit_code == 3
    assert "error:" in res.output


def test_usage_error_for_bad_at_file(runner):
    with runner.isolated_filesystem():
        res = invoke(runner, "small-ball", "--law", "@missing.json",
                     "--sets", SET)
        assert res.exit_code == 3
        assert "not found" in res.output


def test_failed_premise_exits_1(runner):
    res = invoke(runner, "bounds", "--dist", "pareto(3,1)", "--r", "3")
    assert res.exit_code == 1
    env = json.loads(res.output)
    assert env["verdict"] == "fail"
    assert env["report"]["error"]["type"] == "InfiniteMoment"


def test_inconclusive_exits_2(runner):
    res = invoke(runner, "regularity", "--law", LAW, "--sets", SET,
                 "--b", "0.008", "--samples", "100000")
    assert res.exit_code == 2
    assert json.loads(res.output)["verdict"] == "inconclusive"


def test_seed_environment_fallback(runner):
    res = invoke(runner, "small-ball", "--law", LAW, "--sets", SET,
                 "--samples", "100000", "--no-timestamp",
                 env={"MINMAX_HYPER_SEED": "77"})
    assert res.exit_code == 0
    assert json.loads(res.output)["config"]["seed"] == 77
    # explicit flag wins over the environment
    res2 = invoke(runner, "small-ball", "--law", LAW, "--sets", SET,
                  "--samples", "100000", "--seed", "3", "--no-timestamp",
                  env={"MINMAX_HYPER_SEED": "77"})
    assert json.loads(res2.output)["config"]["seed"] == 3


def test_seed_environment_must_be_integer(runner):
    res = invoke(runner, "small-ball", "--law", LAW, "--sets", SET,
                 "--samples", "100000", env={"MINMAX_HYPER_SEED": "soon"})
    assert res.exit_code == 3


def test_at_file_arguments_and_out_file(runner):
    with runner.isolated_filesystem():
        with open("law.json", "w") as f:
            f.write(LAW)
        with open("set.json", "w") as f:
            f.write(SET)
        res = invoke(runner, "small-ball", "--law", "@law.json",
                     "--sets", "@set.json", "--samples", "100000",
                     "--no-timestamp", "--out", "report.json")
        assert res.exit_code == 0
        assert res.output.strip() == "small-ball: pass -> report.json"
        with open("report.json") as f:
            env = json.load(f)
        assert env["report"]["law"] == "gaussian(d=2)"


def test_thread_count_never_changes_report_bytes(runner):
    with runner.isolated_filesystem():
        for threads, name in ((1, "a.json"), (4, "b.json")):
            res = invoke(runner, "kanter", "--law", LAW, "--sets", SET,
                         "--samples", "100000", "--seed", "11",
                         "--threads", str(threads),
                         "--no-timestamp", "--out", name)
            assert res.exit_code == 0
        with open("a.json", "rb") as f:
            a = f.read()
        with open("b.json", "rb") as f:
            b = f.read()
        assert a == b


def test_json_output_is_sorted_and_newline_terminated(runner):
    res = invoke(runner, "constants", "--no-timestamp")
    assert res.output.endswith("\n")
    env = json.loads(res.output)
    assert list(env) == sorted(env)


def test_version_and_command_roster(runner):
    res = invoke(runner, "--version")
    assert res.exit_code == 0
    help_out = invoke(runner, "--help").output
    for cmd in ("moments", "bounds", "hyper-min", "hyper-max", "hyper-minmax",
                "constants", "compare", "small-ball", "kanter", "regularity",
                "correlation", "slepian", "hyp62", "integral72",
                "explore-conjectures", "serve"):
        assert cmd in help_out


def test_compare_single_direction(runner):
    res = invoke(runner, "compare", "--dist-x", "exp(1)", "--dist-y", "exp(2)",
                 "--direction", "thinning")
    assert res.exit_code == 0
    env = json.loads(res.output)
    assert [a["anchor"] for a in env["assertions"]] == ["thinning-equivalence"]
    assert env["report"]["thinning"]["C_tail"] == 1.0


def test_hyper_min_cli_exp_golden(runner):
    res = invoke(runner, "hyper-min", "--dist", "exp(1)", "--n", "1",
                 "--n", "2", "--n", "4")
    assert res.exit_code == 0
    env = json.loads(res.output)
    assert env["report"]["C_empirical"] == pytest.approx(math.sqrt(2), rel=1e-9)
    assert env["verdict"] == "pass"
