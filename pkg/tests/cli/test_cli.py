"""
Tests für die fsopkit CLI
"""
import json

import pytest
import structlog
from click.testing import CliRunner

from fsopkit import __version__
from fsopkit.cli.main import cli, execute
from fsopkit.domain.exceptions import BoundExceededError


@pytest.fixture(autouse=True)
def restore_structlog():
    yield
    structlog.reset_defaults()


@pytest.fixture
def runner():
    return CliRunner()


class TestExitCodes:

    def test_pass(self, runner):
        result = runner.invoke(cli, ["poset", "whitney", "--family", "partition", "--n", "4"])
        assert result.exit_code == 0
        assert "1 -6t +11t^2 -6t^3" in result.output

    def test_fail(self, runner, module_path):
        args = ["fsop", "type", "--module", module_path("p1"), "--j", "1", "--max", "1", "--slack", "0"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 2
        assert "fail" in result.output

    def test_hypotheses_unmet(self, runner, module_path):
        args = ["fsop", "kd", "--module", module_path("p2"), "--d", "2", "--n", "0"]
        assert runner.invoke(cli, args).exit_code == 3

    def test_invalid_input(self, runner):
        result = runner.invoke(cli, ["lang", "dfa", "--regex", "a*("])
        assert result.exit_code == 1
        assert "Fehler" in result.output

    def test_bound_exceeded(self, runner):
        result = runner.invoke(cli, ["poset", "mobius", "--family", "partition", "--n", "9"])
        assert result.exit_code == 1
        assert "Fehler" in result.output

    def test_usage_error(self):
        assert execute(["poset", "whitney", "--n", "3"]) == 1

    def test_init_reports_both_statements(self, runner, module_path):
        args = ["--format", "json", "lang", "init", "--module", module_path("sym2"), "--max", "3",
                "--order-max-d", "2", "--order-max-n", "4"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0
        statements = [entry["statement"] for entry in json.loads(result.output)]
        assert statements == ["word-order-axiom", "initial-module"]


class TestOutput:

    def test_json_format(self, runner, module_path):
        args = ["--format", "json", "fsop", "hilbert", "--module", module_path("p2"), "--max", "6"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["verdict"] == "pass"
        assert payload["witness"]["dims"] == "0,0,2,6,14,30,62"

    def test_deterministic(self, runner, module_path):
        args = ["fsop", "hilbert", "--module", module_path("p2"), "--max", "6"]
        first = runner.invoke(cli, args).output
        assert "0,0,2,6,14,30,62" in first
        assert runner.invoke(cli, args).output == first

    def test_output_dir(self, runner, module_path, monkeypatch, tmp_path, fake):
        target = tmp_path / fake.slug()
        monkeypatch.setenv("FSOPKIT_OUTPUT_DIR", str(target))
        args = ["--format", "json", "fsop", "hilbert", "--module", module_path("p1"), "--max", "4"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0
        assert (target / "hilbert-rationality.json").read_text(encoding="utf-8") == result.output

    def test_config_file(self, runner, tmp_path):
        config = tmp_path / "run.yaml"
        config.write_text("output_format: json\nbounds:\n  partition_max_n: 3\n", encoding="utf-8")
        ok = runner.invoke(cli, ["--config", str(config), "poset", "whitney", "--family", "partition", "--n", "3"])
        assert json.loads(ok.output)["verdict"] == "pass"
        too_big = runner.invoke(cli, ["--config", str(config), "poset", "whitney", "--family", "partition", "--n", "4"])
        assert too_big.exit_code == 1

    def test_invalid_config(self, runner, tmp_path):
        config = tmp_path / "run.json"
        config.write_text('{"slack": 0}', encoding="utf-8")
        result = runner.invoke(cli, ["--config", str(config), "poset", "uppercm", "--family", "boolean", "--n", "2"])
        assert result.exit_code == 1

    def test_language_ideal_text(self, runner):
        result = runner.invoke(cli, ["lang", "ideal", "--word", "abba", "--regex", "ab*a(a*b*)*"])
        assert result.exit_code == 0
        assert "1|23|4" in result.output

    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output


class TestErrorHandling:

    def test_domain_errors_map_to_one(self, runner, mocker):
        mocker.patch(
            "fsopkit.application.handlers.verification_handlers.VerificationCommandHandler.handle_upper_cm",
            side_effect=BoundExceededError("n", 20, 12),
        )
        result = runner.invoke(cli, ["poset", "uppercm", "--family", "boolean", "--n", "2"])
        assert result.exit_code == 1
        assert "20" in result.output

    def test_execute_returns_exit_code(self, capsys):
        assert execute(["sym", "applyD", "--kernel", "3"]) == 0
        assert "symfun-kernel" in capsys.readouterr().out
