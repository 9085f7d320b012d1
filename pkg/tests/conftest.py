"""
Gemeinsame Fixtures für die fsopkit Tests
"""
import random
from pathlib import Path

import pytest
from faker import Faker

from fsopkit.domain.policies.enumeration_bounds import EnumerationBounds
from fsopkit.domain.services.fsop_modules import free_presentation, parse_presentation
from fsopkit.infrastructure.config.settings import reset_settings

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Keine Umgebung oder .env aus dem Arbeitsverzeichnis"""
    monkeypatch.delenv("FSOPKIT_OUTPUT_DIR", raising=False)
    monkeypatch.chdir(tmp_path)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def bounds():
    return EnumerationBounds()


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def fake():
    faker = Faker()
    faker.seed_instance(4321)
    return faker


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def module_path(data_dir):
    def resolve(name: str) -> str:
        return str(data_dir / "modules" / f"{name}.json")
    return resolve


@pytest.fixture
def p1():
    return free_presentation(1)


@pytest.fixture
def p2():
    return free_presentation(2)


@pytest.fixture
def sym2(data_dir):
    """P(2)/(12 - 21)"""
    return parse_presentation((data_dir / "modules" / "sym2.json").read_text(encoding="utf-8"))


@pytest.fixture
def p2_rel3(data_dir):
    """P(2)/(112 - 121)"""
    return parse_presentation((data_dir / "modules" / "p2_rel3.json").read_text(encoding="utf-8"))
