"""
Konfiguration für fsopkit
RunConfig aus Datei und Flags, ShellSettings aus der Umgebung
"""
import json
import threading
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

import structlog
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from fsopkit.domain.exceptions import ConfigurationError
from fsopkit.domain.policies.enumeration_bounds import EnumerationBounds

logger = structlog.get_logger(__name__)


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


# =====================================================
# RunConfig
# =====================================================

class RunConfig(BaseModel):
    """
    Parameter eines Laufs

    Attributes:
        truncation_degree: Abschneidegrad N symmetrischer Funktionen
        slack: Zusatzfenster für beschränkte Quantoren
        output_format: json oder text
        star_check_length: Wortlänge für die Prüfung der Eigenschaft (*)
        bounds: Aufzählungsgrenzen
    """
    model_config = ConfigDict(from_attributes=True, frozen=True)

    truncation_degree: int = Field(default=8, gt=0)
    slack: int = Field(default=1, gt=0)
    output_format: OutputFormat = OutputFormat.TEXT
    star_check_length: int = Field(default=8, gt=0)
    bounds: EnumerationBounds = Field(default_factory=EnumerationBounds)

    def with_overrides(
        self,
        truncation_degree: Optional[int] = None,
        slack: Optional[int] = None,
        output_format: Optional[Union[str, OutputFormat]] = None,
    ) -> "RunConfig":
        """Flags überschreiben Dateiwerte; None lässt den Wert stehen"""
        updates: Dict[str, Any] = {}
        if truncation_degree is not None:
            updates["truncation_degree"] = truncation_degree
        if slack is not None:
            updates["slack"] = slack
        if output_format is not None:
            updates["output_format"] = OutputFormat(output_format)
        if not updates:
            return self
        try:
            return RunConfig.model_validate({**self.model_dump(), **updates})
        except ValidationError as exc:
            raise ConfigurationError(f"Ungültige Option: {exc.errors()[0]['msg']}") from exc


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Liest RunConfig aus JSON oder YAML (.yaml/.yml)"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"Konfiguration {path} nicht lesbar: {exc.strerror}") from exc
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text) or {}
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigurationError(f"Konfiguration {path} nicht lesbar: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError(f"Konfiguration {path} ist kein Objekt")
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise ConfigurationError(f"Konfiguration {path}: {location}: {error['msg']}") from exc
    logger.debug("run_config_loaded", path=str(path), output_format=config.output_format.value)
    return config


# =====================================================
# ShellSettings
# =====================================================

class ShellSettings(BaseSettings):
    """Einzige Umgebungs-Einstellung: FSOPKIT_OUTPUT_DIR"""
    model_config = SettingsConfigDict(env_prefix="FSOPKIT_", env_file=".env", extra="ignore")

    output_dir: Optional[Path] = None


_settings: Optional[ShellSettings] = None
_settings_lock = threading.Lock()


def get_settings() -> ShellSettings:
    """Gecachte ShellSettings (einmal pro Prozess gelesen)"""
    global _settings
    if _settings is None:
        with _settings_lock:
            if _settings is None:
                _settings = ShellSettings()
    return _settings


def reset_settings() -> None:
    """Verwirft den Cache (Tests, geänderte Umgebung)"""
    global _settings
    with _settings_lock:
        _settings = None
