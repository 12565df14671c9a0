"""Shared test fixtures for the Betti harness."""
from pathlib import Path
from typing import Callable, Sequence

import pytest

from app.core.config import settings
from app.models.field import CoefficientField
from app.models.polynomial import PolynomialRing
from app.models.presentation import ModulePresentation
from app.models.resolution import Resolution
from app.models.ring import GradedRing
from app.services.resolution_service import ResolutionService

SUITE_DIR = Path(__file__).resolve().parent.parent / "suite"


@pytest.fixture
def f101() -> CoefficientField:
    """The prime field F_101."""
    return CoefficientField(101)


@pytest.fixture
def rationals() -> CoefficientField:
    """The rational numbers."""
    return CoefficientField.rationals()


@pytest.fixture
def make_ring() -> Callable[..., GradedRing]:
    """Build k[variables]/(relations) from strings, F_101 by default."""

    def _make(variables: str, relations: Sequence[str] = (), p: int = 101) -> GradedRing:
        names = tuple(v.strip() for v in variables.split(","))
        ambient = PolynomialRing(CoefficientField(p), names)
        return GradedRing(ambient, [ambient.parse(f) for f in relations])

    return _make


@pytest.fixture
def cyclic() -> Callable[..., ModulePresentation]:
    """R/(generators) from strings."""

    def _cyclic(ring: GradedRing, *generators: str) -> ModulePresentation:
        return ModulePresentation.cyclic(ring, [ring.ambient.parse(g) for g in generators])

    return _cyclic


@pytest.fixture
def resolve() -> Callable[[ModulePresentation], Resolution]:
    """Minimal resolution with the exactness audit switched on."""
    return ResolutionService(audit=True).resolve


@pytest.fixture
def override_settings(monkeypatch: pytest.MonkeyPatch) -> Callable[..., None]:
    """Temporarily override attributes of the global settings."""

    def _override(**values) -> None:
        for key, value in values.items():
            monkeypatch.setattr(settings, key, value)

    return _override


@pytest.fixture
def suite_dir() -> Path:
    """The bundled instance suite."""
    return SUITE_DIR
