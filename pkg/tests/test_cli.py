"""Tests for the git-stab command line."""

from __future__ import annotations

import json
from unittest.mock import patch

import pytest

from git_stability.cli import EXIT_DETERMINATE, EXIT_ERROR, EXIT_PRESUMED, build_job, build_parser, main


def _json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


class TestJobConfig:
    """Tests for merging fixture, config file and flags."""

    def test_flags_override_fixture(self):
        """Inline weights replace the fixture's while its binding and inputs stay."""
        args = build_parser().parse_args(["omega", "--fixture", "halphen_ii_star_non_stable", "--lambda", "2,-1,-1"])
        job = build_job(args)
        assert job.weights == [2, -1, -1]
        assert job.order == ["y", "x", "z"]
        assert len(job.inputs) == 2
        assert job.options["index"] == 3

    def test_order_and_inputs_replace_fixture(self):
        """--order and positional inputs replace the fixture's lists rather than extending them."""
        args = build_parser().parse_args(
            ["omega", "--fixture", "halphen_ii_star_non_stable", "x^3", "y^3", "--lambda", "1,0,-1", "--order", "x,y,z"]
        )
        job = build_job(args)
        assert job.order == ["x", "y", "z"]
        assert job.weights == [1, 0, -1]
        assert job.inputs == ["x^3", "y^3"]

    def test_config_lists_replace_fixture(self, tmp_path):
        """A config file's weights replace the fixture's."""
        config = tmp_path / "job.json"
        config.write_text(json.dumps({"weights": [2, -1, -1], "options": {"extra": 1}}))
        args = build_parser().parse_args(["omega", "--fixture", "halphen_ii_star_non_stable", "--config", str(config)])
        job = build_job(args)
        assert job.weights == [2, -1, -1]
        assert job.options["index"] == 3
        assert job.options["extra"] == 1

    def test_config_file(self, tmp_path):
        """A config file sets defaults that flags still override."""
        config = tmp_path / "job.json"
        config.write_text(json.dumps({"flag_depth": 3, "max_tuples": 50}))
        args = build_parser().parse_args(["destabilize", "x^3", "y^3", "--config", str(config), "--max-tuples", "70"])
        job = build_job(args)
        assert job.flag_depth == 3
        assert job.max_tuples == 70

    def test_inputs_from_file(self, tmp_path):
        """@path reads one polynomial per line."""
        source = tmp_path / "pencil.txt"
        source.write_text("# coordinate cubes\nx^3\ny^3\n")
        job = build_job(build_parser().parse_args(["destabilize", f"@{source}"]))
        assert job.inputs == ["x^3", "y^3"]

    def test_system_flag_appends(self):
        """--system inputs follow the positional ones."""
        job = build_job(build_parser().parse_args(["destabilize", "x^3", "--system", "y^3"]))
        assert job.inputs == ["x^3", "y^3"]


class TestCommands:
    """Tests for command output and exit codes."""

    def test_omega_fixture_json(self, capsys):
        """The bound Halphen pencil sits on the threshold."""
        code = main(["omega", "--fixture", "halphen_ii_star_non_stable", "--format", "json"])
        document = _json(capsys)
        assert code == EXIT_DETERMINATE
        assert document["command"] == "omega"
        assert document["report"]["omega"] == 18
        assert document["report"]["a_lambda"] == 3
        assert document["schema"] == "git-stab/1"

    def test_omega_fixture_with_flags(self, capsys):
        """Restating the fixture's binding on the command line gives the same weight."""
        code = main(
            [
                "omega",
                "--fixture",
                "halphen_ii_star_non_stable",
                "--lambda",
                "1,0,-1",
                "--order",
                "y,x,z",
                "--format",
                "json",
            ]
        )
        assert code == EXIT_DETERMINATE
        assert _json(capsys)["report"]["omega"] == 18

    def test_verdict_descending_weights(self, capsys):
        """Non-increasing weights bind in index order without --order."""
        code = main(["verdict", "x^3", "y^3", "--lambda", "1,0,-1", "--format", "json"])
        assert code == EXIT_DETERMINATE
        assert _json(capsys)["report"]["status_at_lambda"] == "unstable_at"

    def test_unsorted_weights_need_order(self, capsys):
        """Weights out of order without a binding are an input error."""
        code = main(["verdict", "x^3", "y^3", "--lambda", "0,1,-1"])
        assert code == EXIT_ERROR
        assert "--order is required" in capsys.readouterr().err

    def test_unsorted_weights_with_order(self, capsys):
        """With a binding any weight order is accepted."""
        code = main(["verdict", "x^2 + y*z", "--lambda", "0,1,-1", "--order", "x,y,z", "--format", "json"])
        assert code == EXIT_DETERMINATE
        assert _json(capsys)["report"]["weights"] == [1, 0, -1]

    def test_destabilize_unstable(self, capsys):
        """A certified destabilizer exits 0."""
        assert main(["destabilize", "x^3", "y^3", "--format", "json"]) == EXIT_DETERMINATE
        assert _json(capsys)["report"]["kind"] == "unstable"

    def test_lct_bound_absent(self, capsys):
        """No positive toric value means no bound and exit 2."""
        assert main(["lct-bound", "x^3 + y^3 + z^3", "--format", "json"]) == EXIT_PRESUMED
        assert _json(capsys)["report"]["lct_bound"] is None

    def test_lct_bound(self, capsys):
        """The cuspidal cubic is bounded by 5/6."""
        assert main(["lct-bound", "--fixture", "cuspidal_cubic", "--format", "json"]) == EXIT_DETERMINATE
        assert _json(capsys)["report"]["lct_bound"] == "5/6"

    def test_net(self, capsys):
        """The cuspidal net is classified and not stable."""
        assert main(["net", "--fixture", "net_cuspidal", "--format", "json"]) == EXIT_DETERMINATE
        report = _json(capsys)["report"]
        assert report["cubic_class"]["kind"] == "worse_than_nodal"
        assert report["direct_verdict"] == "not_stable"

    def test_net_text(self, capsys):
        """Text output is a rich table."""
        assert main(["net", "--fixture", "net_smooth_discriminant"]) == EXIT_DETERMINATE
        assert "Net of conics" in capsys.readouterr().out

    def test_too_few_conics(self, capsys):
        """A net needs three conics."""
        assert main(["net", "x^2", "y^2"]) == EXIT_ERROR
        assert "at least 3" in capsys.readouterr().err

    def test_unknown_fixture(self, capsys):
        """Unknown fixtures are reported with the available names."""
        assert main(["net", "--fixture", "missing"]) == EXIT_ERROR
        assert "Available:" in capsys.readouterr().err

    def test_parse_error(self, capsys):
        """Syntax errors exit 1 with the error type."""
        assert main(["destabilize", "x +* y"]) == EXIT_ERROR
        assert "PolySyntaxError" in capsys.readouterr().err

    def test_fixtures_json(self, capsys):
        """The fixture listing names every built-in."""
        assert main(["fixtures", "--format", "json"]) == EXIT_DETERMINATE
        names = {entry["name"] for entry in _json(capsys)["fixtures"]}
        assert {"net_cuspidal", "halphen_ii_star_stable"} <= names

    def test_no_command(self, capsys):
        """Without a command the help is printed."""
        assert main([]) == EXIT_DETERMINATE
        assert "usage: git-stab" in capsys.readouterr().out

    def test_interrupt(self):
        """Ctrl-C exits 130."""
        with patch("git_stability.cli.cmd_destabilize", side_effect=KeyboardInterrupt):
            assert main(["destabilize", "x^3", "y^3"]) == 130


def test_cli_main_help():
    """Test main CLI entry point with help."""
    with patch("sys.argv", ["git-stab", "--help"]):
        with pytest.raises(SystemExit) as exc:
            main()
        assert exc.value.code == 0
