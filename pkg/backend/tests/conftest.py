import pytest
from pathlib import Path
import shutil

from fowl.config import settings
from fowl.owl.model import OntologyDocument
from fowl.owl.parser import parse_ontology
from fowl.schemas import ProverConfig

FIXTURES = Path(__file__).parent / "fixtures"


def prover_available() -> bool:
    return shutil.which(settings.FOWL_PROVER) is not None


def pytest_collection_modifyitems(config, items):
    if prover_available():
        return
    skip = pytest.mark.skip(reason=f"prover '{settings.FOWL_PROVER}' not found on PATH")
    for item in items:
        if "prover" in item.keywords:
            item.add_marker(skip)


def fixture_path(*parts: str) -> Path:
    return FIXTURES.joinpath(*parts)


def read_fixture(*parts: str) -> str:
    return fixture_path(*parts).read_text(encoding="utf-8")


def load_fixture(*parts: str) -> OntologyDocument:
    return parse_ontology(read_fixture(*parts))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def real_prover():
    """Settings-driven prover config with the suite's 30 s budget"""
    return ProverConfig.from_settings(timeout_seconds=30)


@pytest.fixture
def fake_prover(tmp_path):
    """Factory for prover configs backed by a small shell script.

    The script gets the problem path as $1.
    """
    def make(body: str, name: str = "prover", timeout: int = 5, **overrides) -> ProverConfig:
        script = tmp_path / f"{name}.sh"
        script.write_text(f"#!/bin/sh\n{body}\n", encoding="utf-8")
        script.chmod(0o755)
        return ProverConfig(
            executable=str(script), argument_template=["{file}"], timeout_seconds=timeout, **overrides
        )
    return make


@pytest.fixture
def szs_prover(fake_prover):
    """Fake prover that always prints the given SZS status"""
    def make(status: str, **overrides) -> ProverConfig:
        return fake_prover(f'echo "% SZS status {status} for $1"', name=f"szs_{status}", **overrides)
    return make
