"""Tests for the command line interface."""
from __future__ import annotations

import dataclasses
import json

from click.testing import CliRunner
import pytest

from noncanon import __version__
from noncanon.cli import FAIL, PASS, RunOptions, _extension_section, main, run
from noncanon.const import ENV_THREADS, REPORT_SCHEMA
from noncanon.exceptions import InvalidParameter, UnknownCommand
from noncanon.famf import build_alpha_prime
from noncanon.fixtures import FixtureBundle
from noncanon.strongify import NON_EXISTENCE, STRONG


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _structured(runner: CliRunner, *args: str, env=None):
    result = runner.invoke(main, [*args, "--report", "structured"], env=env)
    return result, json.loads(result.stdout)


def test_check_monoidal_structured(runner):
    result, data = _structured(
        runner, "check", "--monoidal", "finset:2", "--max-word-len", "2"
    )

    assert result.exit_code == 0, result.output
    assert data["schema"] == REPORT_SCHEMA
    assert data["command"] == "check"
    assert data["options"]["max_word_len"] == 2
    assert data["passed"] is True
    (section,) = data["sections"]
    assert section["kind"] == "monoidal"
    counts = section["reports"][1]["counts"]
    assert counts["pentagon"] > 0
    assert counts["triangle"] > 0


def test_structured_report_is_deterministic(runner):
    args = (
        "check",
        "--monoidal",
        "delooping:3",
        "--functor",
        "shift:3:1",
        "--max-word-len",
        "3",
    )

    first, _ = _structured(runner, *args)
    second, _ = _structured(runner, *args)

    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout


def test_threads_from_environment(runner):
    args = (
        "check",
        "--category",
        "terminal",
        "--category",
        "arrow",
        "--coproducts",
        "arrow",
    )

    serial, data = _structured(runner, *args)
    threaded, _ = _structured(runner, *args, env={ENV_THREADS: "3"})

    assert threaded.exit_code == 0, threaded.output
    assert threaded.stdout == serial.stdout
    assert [section["name"] for section in data["sections"]] == [
        "terminal",
        "arrow",
        "arrow",
    ]


def test_check_text_report(runner):
    result = runner.invoke(main, ["check", "--category", "arrow"])

    assert result.exit_code == 0, result.output
    assert "PASS  category arrow: pass" in result.stdout
    assert result.stdout.rstrip().splitlines()[-1].startswith("passed in")


def test_strongify_twisted_phi(runner):
    result, data = _structured(
        runner,
        "strongify",
        "--functor",
        "f_dbl",
        "--phi",
        "twisted",
        "--max-word-len",
        "3",
    )

    assert result.exit_code == 0, result.output
    (section,) = data["sections"]
    assert section["verdict"] == STRONG
    assert section["details"]["max_word_len"] == 3


def test_strongify_options_are_exclusive(runner):
    result = runner.invoke(
        main, ["strongify", "--functor", "f_dbl", "--phi", "canonical", "--search"]
    )

    assert result.exit_code == 2


def test_famf_squaring_has_no_witness(runner):
    result, data = _structured(
        runner, "famf", "--functor", "f_sq", "--max-family-len", "2"
    )

    assert result.exit_code == 1
    preservation, search = data["sections"]
    assert preservation["details"]["failing_pair"] == [1, 1]
    assert search["verdict"] == NON_EXISTENCE
    assert search["details"] == {"found": 0, "searched": 2}


def test_famf_coface(runner):
    result, data = _structured(runner, "famf", "--functor", "d0")

    assert result.exit_code == 0, result.output
    preservation, search = data["sections"]
    assert preservation["details"]["binary"] is True
    assert preservation["details"]["initial"] is False
    assert search["details"]["found"] > 0


def test_famf_beta(runner):
    result, data = _structured(
        runner, "famf", "--functor", "f_dbl", "--beta", "beta_swap"
    )

    assert result.exit_code == 0, result.output
    assert data["sections"][1]["kind"] == "beta"
    assert data["sections"][1]["details"]["failing_pair"] is None


def test_search_doubling(runner):
    result, data = _structured(
        runner,
        "search",
        "--functor",
        "f_dbl",
        "--max-word-len",
        "2",
        "--max-family-len",
        "2",
    )

    assert result.exit_code == 0, result.output
    strength, coproducts = data["sections"]
    assert strength["verdict"] == STRONG
    assert strength["details"]["strong"] is True
    assert coproducts["passed"] is True
    assert coproducts["details"]["betas"] == 2


def test_fixture_file(runner, tmp_path):
    document = {
        "kind": "category",
        "name": "One",
        "objects": 1,
        "morphisms": [{"id": 0, "src": 0, "dst": 0}],
        "identity": [0],
        "compose": [[0, 0, 0]],
    }
    path = tmp_path / "one.json"
    path.write_text(json.dumps(document), encoding="utf-8")

    result, data = _structured(
        runner, "check", "--fixture", str(path), "--category", "One"
    )

    assert result.exit_code == 0, result.output
    assert data["fixtures"] == [document]


@pytest.mark.parametrize(
    "args",
    [
        ["check", "--category", "nowhere"],
        ["check"],
        ["strongify", "--functor", "f_dbl", "--phi", "missing"],
        ["famf", "--functor", "sheaf"],
    ],
)
def test_errors_exit_with_two(runner, args):
    result = runner.invoke(main, args)

    assert result.exit_code == 2


def test_version(runner):
    result = runner.invoke(main, ["--version"])

    assert result.exit_code == 0
    assert __version__ in result.stdout


def test_run_directly():
    bundle = FixtureBundle()
    report = run("check", bundle, RunOptions(categories=["arrow"]))

    assert report.passed
    assert report.to_dict()["sections"][0]["verdict"] == "pass"
    with pytest.raises(UnknownCommand):
        run("prove", bundle, RunOptions())
    with pytest.raises(InvalidParameter):
        run("check", bundle, RunOptions())


def test_single_element_families_are_refused(runner):
    result = runner.invoke(
        main, ["famf", "--functor", "f_sq", "--search", "--max-family-len", "1"]
    )

    assert result.exit_code == 2
    assert "--max-family-len" in result.output


def test_extension_verdict_follows_naturality(builtins, f_dbl):
    F = builtins.functor("f_dbl:2")
    S, T = builtins.finset(2), builtins.finset(4)
    alpha = {key: f_dbl.phi_at(*key) for key in S.pairs()}
    alpha_prime = build_alpha_prime(F, alpha, S, T, 2)

    assert _extension_section("shuffle", alpha_prime).verdict == PASS
    broken = dataclasses.replace(alpha_prime, natural=False)
    section = _extension_section("shuffle", broken)
    assert not section.passed
    assert section.verdict == FAIL
