"""
Verifikations-Reports für fsopkit
Ein Report pro geprüfter Aussage: Parameter, Urteil und Zeugen
"""
from enum import Enum
from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Verdict(str, Enum):
    """Urteil einer Prüfung"""
    PASS = "pass"
    FAIL = "fail"
    HYPOTHESES_UNMET = "hypotheses-unmet"


EXIT_CODES: Dict[Verdict, int] = {
    Verdict.PASS: 0,
    Verdict.FAIL: 2,
    Verdict.HYPOTHESES_UNMET: 3,
}


class VerificationReport(BaseModel):
    """
    Ergebnis einer Prüfung

    Attributes:
        statement_id: Schlüssel in STATEMENT_REGISTRY
        parameters: Eingaben der Prüfung (nur JSON-Werte)
        verdict: pass | fail | hypotheses-unmet
        witness: Dimensionen, Gegenbeispiele, berechnete Werte
    """
    model_config = ConfigDict(from_attributes=True, frozen=True)

    statement_id: str = Field(min_length=1)
    parameters: Dict[str, Any] = Field(default_factory=dict)
    verdict: Verdict = Verdict.PASS
    witness: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_witness(self) -> "VerificationReport":
        if self.verdict is Verdict.FAIL and not self.witness:
            raise ValueError(f"Report '{self.statement_id}': fail ohne Zeugen")
        return self

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]
