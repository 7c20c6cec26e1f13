"""Test the click CLI application
"""

import json
from pathlib import Path

import pandas as pd
from click.testing import CliRunner
from pytest import MonkeyPatch, mark

from src.cli.main import (
    EXIT_DISAGREEMENT,
    EXIT_INVALID_INPUT,
    EXIT_TOO_LARGE,
    analyze,
    parse_epsilons,
)
from src.cli.report import parse_report

runner = CliRunner()


def test_analyze_text(test_hub_data: Path) -> None:
    """Default output: stable states, then one line per vanished vertex"""
    result = runner.invoke(analyze, [str(test_hub_data / "two_cycles.json")])
    assert result.exit_code == 0, result.output
    assert result.output == (
        "stable: x z\n"
        "y vanishes depth=1 timescale=eps^-2\n"
        "t vanishes depth=2 timescale=eps^-6\n"
    )


def test_analyze_nested(test_hub_data: Path) -> None:
    result = runner.invoke(analyze, [str(test_hub_data / "nested_vanishing.json")])
    assert result.exit_code == 0, result.output
    assert result.output.splitlines() == [
        "stable: t",
        "x vanishes depth=1 timescale=eps^0",
        "y vanishes depth=1 timescale=eps^0",
        "z vanishes depth=2 timescale=eps^-2",
    ]


def test_analyze_line_format(test_hub_data: Path) -> None:
    from_lines = runner.invoke(analyze, [str(test_hub_data / "two_cycles.txt")])
    from_json = runner.invoke(analyze, [str(test_hub_data / "two_cycles.json")])
    assert from_lines.exit_code == 0
    assert from_lines.output == from_json.output


def test_json_output_round_trips(test_hub_data: Path) -> None:
    """The JSON report parses back and is byte-identical across runs"""
    args = [str(test_hub_data / "two_cycles.json"), "--json", "--trace"]
    first = runner.invoke(analyze, args)
    second = runner.invoke(analyze, args)
    assert first.exit_code == 0, first.output
    assert first.output == second.output
    report = parse_report(first.output)
    assert report.stable == ["x", "z"]
    assert [v.time_scale for v in report.vanished] == ["-2", "-6"]
    assert report.trace is not None
    assert [level.divisor for level in report.trace] == ["e^2", "e^4", "0"]
    assert json.loads(first.output)["vanished"][0]["states"] == ["y"]


def test_verify_agrees(test_hub_data: Path, tmpdir: Path) -> None:
    """Unit coefficients: the path check agrees, the sweep agrees"""
    csv_path = tmpdir / "sweep.csv"
    result = runner.invoke(
        analyze,
        [
            str(test_hub_data / "two_cycles.json"),
            "--verify",
            "--json",
            "--sweep_csv",
            str(csv_path),
        ],
    )
    assert result.exit_code == 0, result.output
    report = parse_report(result.output)
    assert report.verification is not None
    assert report.verification.arborescence.status == "agree"
    assert report.verification.shrink.status == "agree"
    assert report.verification.numeric.status == "agree"
    assert report.verification.numeric.empirical
    assert report.verification.numeric.classification["x"] == "stable"
    frame = pd.read_csv(csv_path, index_col="epsilon")
    assert list(frame.columns) == ["x", "y", "z", "t"]
    assert len(frame) == 5


def test_verify_text_on_irreducible_chain(test_hub_data: Path) -> None:
    result = runner.invoke(
        analyze, [str(test_hub_data / "nested_vanishing.json"), "--verify"]
    )
    assert result.exit_code == 0, result.output
    assert "verify arborescence: agree" in result.output
    assert "verify shrink: agree" in result.output
    assert "verify numeric (empirical): agree" in result.output
    assert "note: the stable set depends only on the exponents" in result.output


def test_verify_skips_non_stochastic_rows(test_hub_data: Path) -> None:
    result = runner.invoke(
        analyze, [str(test_hub_data / "transient_paths.json"), "--verify"]
    )
    assert result.exit_code == 0, result.output
    assert "stable: y" in result.output
    assert "verify arborescence: agree" in result.output
    assert "verify numeric (empirical): skipped" in result.output


def test_disagreement_exit_code(test_hub_data: Path) -> None:
    """At large epsilon the sweep still sees x as stable"""
    result = runner.invoke(
        analyze,
        [
            str(test_hub_data / "unique_stable.json"),
            "--verify",
            "--epsilons",
            "1,0.5",
        ],
    )
    assert result.exit_code == EXIT_DISAGREEMENT
    assert "verify numeric (empirical): disagree" in result.output


def test_too_large_exit_code(test_hub_data: Path) -> None:
    result = runner.invoke(
        analyze, [str(test_hub_data / "two_cycles.json"), "--verify", "--cap", "3"]
    )
    assert result.exit_code == EXIT_TOO_LARGE
    assert "stable: x z" in result.output
    assert "verification cap of 3" in result.output


def test_cap_from_environment(test_hub_data: Path, monkeypatch: MonkeyPatch) -> None:
    monkeypatch.setenv("HUB_CAP", "2")
    args = [str(test_hub_data / "two_cycles.json"), "--verify"]
    result = runner.invoke(analyze, args)
    assert result.exit_code == EXIT_TOO_LARGE


def test_cap_from_env_file(test_hub_data: Path, tmpdir: Path) -> None:
    (tmpdir / ".env").write_text("HUB_CAP=2\n", encoding="utf-8")
    args = [str(test_hub_data / "two_cycles.json"), "--verify"]
    result = runner.invoke(analyze, args + ["--env_prefix", str(tmpdir)])
    assert result.exit_code == EXIT_TOO_LARGE
    result = runner.invoke(analyze, args + ["--env_prefix", str(tmpdir), "--cap", "8"])
    assert result.exit_code == 0, result.output


@mark.parametrize(
    "name",
    ["self_loop.json", "negative_exponent.txt", "no_states.json", "broken.json"],
)
def test_invalid_input_exit_code(test_hub_data: Path, name: str) -> None:
    result = runner.invoke(analyze, [str(test_hub_data / name)])
    assert result.exit_code == EXIT_INVALID_INPUT
    assert name in result.output


def test_invalid_epsilons(test_hub_data: Path) -> None:
    result = runner.invoke(
        analyze, [str(test_hub_data / "two_cycles.json"), "--epsilons", "0.1,2"]
    )
    assert result.exit_code == EXIT_INVALID_INPUT


def test_parse_epsilons() -> None:
    assert parse_epsilons("1e-1, 1e-2,") == [0.1, 0.01]


def test_dot_files(test_hub_data: Path, test_output_dir: Path) -> None:
    dot_dir = test_output_dir / "dot"
    result = runner.invoke(
        analyze, [str(test_hub_data / "two_cycles.json"), "--dot", str(dot_dir)]
    )
    assert result.exit_code == 0, result.output
    assert sorted(p.name for p in dot_dir.iterdir()) == [
        "level-01.dot",
        "level-02.dot",
        "level-03.dot",
    ]
    second = (dot_dir / "level-02.dot").read_text(encoding="utf-8")
    assert '"t" -> "z" [label="e^0", style=bold];' in second


def test_log_file(test_hub_data: Path, test_log_file: Path) -> None:
    result = runner.invoke(
        analyze,
        [
            str(test_hub_data / "two_cycles.json"),
            "--log_file",
            str(test_log_file),
            "--verbose",
        ],
    )
    assert result.exit_code == 0
    log = test_log_file.read_text(encoding="utf-8")
    assert "[INFO]: 2 stable states after 3 levels" in log
    assert "[DEBUG]: depth 1: 4 vertices, divisor e^2" in log
