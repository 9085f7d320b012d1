"""
Tests für Reports und deren Ausgabe
"""
import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.report import EXIT_CODES, VerificationReport, Verdict
from fsopkit.infrastructure.config.settings import OutputFormat, RunConfig, ShellSettings
from fsopkit.infrastructure.reports.report_emitter import (
    STATEMENT_REGISTRY,
    emit_all,
    emit_report,
    parse_report,
    write_report,
)

JSON_CONFIG = RunConfig(output_format=OutputFormat.JSON)


@pytest.fixture
def report():
    return VerificationReport(
        statement_id="hilbert-rationality",
        parameters={"module": "P(2)", "max_n": 6},
        verdict=Verdict.PASS,
        witness={"dims": (0, 0, 2, 6, 14, 30, 62), "ratio": Fraction(1, 2)},
    )


class TestVerdicts:

    def test_exit_codes(self):
        assert EXIT_CODES == {Verdict.PASS: 0, Verdict.FAIL: 2, Verdict.HYPOTHESES_UNMET: 3}

    def test_fail_needs_witness(self):
        with pytest.raises(ValidationError):
            VerificationReport(statement_id="upper-cm", verdict=Verdict.FAIL)

    def test_hypotheses_unmet(self):
        report = VerificationReport(statement_id="languages-exactness", verdict="hypotheses-unmet")
        assert report.exit_code == 3


class TestEmit:

    def test_json_is_canonical(self, report):
        text = emit_report(report, JSON_CONFIG)
        data = json.loads(text)
        assert data["statement"] == "hilbert-rationality"
        assert data["description"] == STATEMENT_REGISTRY["hilbert-rationality"]
        assert data["witness"] == {"dims": [0, 0, 2, 6, 14, 30, 62], "ratio": "1/2"}
        assert emit_report(report, JSON_CONFIG) == text

    def test_parse_json_back(self, report):
        parsed = parse_report(emit_report(report, JSON_CONFIG))
        assert parsed.statement_id == report.statement_id
        assert parsed.verdict is Verdict.PASS
        assert parsed.witness["ratio"] == "1/2"

    def test_text(self, report):
        text = emit_report(report)
        lines = text.splitlines()
        assert lines[0].startswith("statement")
        assert "hilbert-rationality" in lines[0]
        assert any(line.startswith("verdict") and line.rstrip().endswith("pass") for line in lines)
        assert "[0, 0, 2, 6, 14, 30, 62]" in text
        assert emit_report(report) == text

    def test_unknown_statement(self):
        with pytest.raises(InvalidInputError):
            emit_report(VerificationReport(statement_id="no-such-statement"))

    def test_parse_garbage(self):
        with pytest.raises(InvalidInputError):
            parse_report("not a report")


class TestWrite:

    def test_without_output_dir(self, report):
        assert write_report(report, RunConfig(), ShellSettings()) is None

    def test_writes_file(self, report, tmp_path):
        settings = ShellSettings(output_dir=tmp_path / "out")
        target = write_report(report, JSON_CONFIG, settings)
        assert target == tmp_path / "out" / "hilbert-rationality.json"
        assert target.read_text(encoding="utf-8") == emit_report(report, JSON_CONFIG)

    def test_emit_all(self, report, tmp_path):
        other = VerificationReport(statement_id="upper-cm", parameters={"family": "B", "n": 3})
        payload = json.loads(emit_all([report, other], JSON_CONFIG))
        assert [entry["statement"] for entry in payload] == ["hilbert-rationality", "upper-cm"]

        settings = ShellSettings(output_dir=tmp_path)
        text = emit_all([report, other], RunConfig(), settings)
        assert text == emit_report(report) + "\n" + emit_report(other)
        assert (tmp_path / "upper-cm.txt").exists()
