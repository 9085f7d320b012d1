"""
Report-Ausgabe für fsopkit
Kanonisches JSON oder ausgerichteter Text, optional zusätzlich als Datei
"""
import io
import json
from pathlib import Path
from typing import Dict, Optional, Union

import structlog
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table
from rich.text import Text

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.report import VerificationReport
from fsopkit.infrastructure.config.settings import OutputFormat, RunConfig, ShellSettings
from fsopkit.infrastructure.serialization.json_io import to_jsonable

logger = structlog.get_logger(__name__)

TEXT_WIDTH = 120

STATEMENT_REGISTRY: Dict[str, str] = {
    "whitney-closed-form": "Whitney-Polynom von P(n), B(n), B_q(n) in Produktform",
    "mobius-homological": "Homologische Möbius-Zahl gleich rekursiver Möbius-Funktion",
    "upper-cm": "P(n), B(n) und B_q(n) sind upper Cohen-Macaulay",
    "principal-ideal-exact": "Bar-Komplex von kP_{≥x} ist exakt für x ≠ 1̂",
    "koszul-bar-comparison": "Koszul- und Bar-Komplex haben dieselbe Homologie",
    "grothendieck-identity": "Euler-Charakteristik von K_d verschwindet ausser im Grad d",
    "fsop-exactness": "K_d und B_d eines in Grad < d erzeugten Moduls sind exakt",
    "hilbert-rationality": "Hilbert-Reihe rational mit Nenner ∏(1 - jt)",
    "character-identity": "Charakter von B_d(M) durch binomiale D-Operatoren",
    "symfun-kernel": "D_n(y_m) = δ und p_n = Σ μ(d)/d y_{nd}",
    "pi-k-projection": "π_k ist eine Projektion auf F_{≤k} mit ε_k∘π_k = ε_k",
    "l-nu-duality": "L_ν ist dual zu den Monomen E_λ",
    "class-function-translation": "Klassenfunktion (X über ν) A^{X-ν} als symmetrische Funktion",
    "growing-rows": "Multiplizitätsreihe rational mit Einheitswurzel-Nenner",
    "language-ideal": "I(w, L) für eine geordnete Sprache",
    "languages-exactness": "B_{(P(ℓ_1),…,P(ℓ_r))}(kJ(w, L)) ist exakt unter den Hypothesen",
    "word-order-axiom": "Lexikographische Wortordnung ist mit OS-Präkomposition verträglich",
    "initial-module": "Assoziiert graduierter Modul gleich Initialmodul",
    "type-bound": "Typ < J durch iterierte Koszul-Komplexe",
    "symfun-evaluation": "Auswertung symmetrischer Funktionen (Paarung, Schur, D)",
    "dfa-structure": "Minimaler DFA, Erreichbarkeitsordnung und Eigenschaft (*)",
}


def _require_registered(report: VerificationReport) -> None:
    if report.statement_id not in STATEMENT_REGISTRY:
        raise InvalidInputError(f"Unbekannte Aussage '{report.statement_id}'")


def report_payload(report: VerificationReport) -> Dict[str, object]:
    return {
        "statement": report.statement_id,
        "description": STATEMENT_REGISTRY[report.statement_id],
        "parameters": to_jsonable(report.parameters),
        "verdict": report.verdict.value,
        "witness": to_jsonable(report.witness),
    }


def _format_value(value: object) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, ensure_ascii=False)


def _render_text(report: VerificationReport) -> str:
    payload = report_payload(report)
    table = Table(show_header=False, box=None, pad_edge=False)
    table.add_column("Feld", no_wrap=True)
    table.add_column("Wert", overflow="fold")
    table.add_row("statement", Text(f"{payload['statement']}: {payload['description']}"))
    for key, value in sorted(payload["parameters"].items()):
        table.add_row(f"  {key}", Text(_format_value(value)))
    table.add_row("verdict", Text(payload["verdict"]))
    for key, value in sorted(payload["witness"].items()):
        table.add_row(f"  {key}", Text(_format_value(value)))
    buffer = io.StringIO()
    Console(file=buffer, width=TEXT_WIDTH, color_system=None, force_terminal=False).print(table)
    return "\n".join(line.rstrip() for line in buffer.getvalue().splitlines()) + "\n"


def emit_report(report: VerificationReport, cfg: Optional[RunConfig] = None) -> str:
    """Serialisiert einen Report; gleiche Eingabe ergibt gleiche Bytes"""
    _require_registered(report)
    cfg = cfg or RunConfig()
    if cfg.output_format is OutputFormat.JSON:
        return json.dumps(report_payload(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return _render_text(report)


def parse_report(text: str) -> VerificationReport:
    """Liest die JSON-Form von emit_report zurück"""
    try:
        data = json.loads(text)
        return VerificationReport(
            statement_id=data["statement"],
            parameters=data.get("parameters", {}),
            verdict=data["verdict"],
            witness=data.get("witness", {}),
        )
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InvalidInputError(f"Kein Report: {exc}") from exc
    except ValidationError as exc:
        raise InvalidInputError(f"Ungültiger Report: {exc.errors()[0]['msg']}") from exc


def write_report(
    report: VerificationReport, cfg: RunConfig, settings: ShellSettings
) -> Optional[Path]:
    """Schreibt den Report nach <output_dir>/<statement-id>.<ext>, falls konfiguriert"""
    if settings.output_dir is None:
        return None
    extension = "json" if cfg.output_format is OutputFormat.JSON else "txt"
    target = Path(settings.output_dir) / f"{report.statement_id}.{extension}"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(emit_report(report, cfg), encoding="utf-8")
    logger.info("report_written", path=str(target), statement=report.statement_id)
    return target


def emit_all(
    reports, cfg: RunConfig, settings: Union[ShellSettings, None] = None
) -> str:
    """Reports in gegebener Reihenfolge, getrennt durch eine Leerzeile (Text) bzw. als JSON-Liste"""
    reports = list(reports)
    if settings is not None:
        for report in reports:
            write_report(report, cfg, settings)
    if cfg.output_format is OutputFormat.JSON:
        if len(reports) == 1:
            return emit_report(reports[0], cfg)
        for report in reports:
            _require_registered(report)
        payload = [report_payload(r) for r in reports]
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(emit_report(r, cfg) for r in reports)
