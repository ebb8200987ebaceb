"""Shared fixtures: src/ on sys.path, corpus paths and the rings used across modules."""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from algebra.graded import RingPresentation  # noqa: E402
from algebra.groebner import Budget, clear_cache, configure_budget  # noqa: E402

CORPUS = ROOT / "corpus"

CI_VARIABLES = "s:3, t:3, x:2, y:2, z:2"
F_X2Z = "y^3 + x^2*z"


def ci_ring(f: str = F_X2Z) -> RingPresentation:
    return RingPresentation.of(CI_VARIABLES, ["s^2 - x^3", f"s*t - ({f})", "t^2 - z^3"], name="ci")


def family_ring(n: int) -> RingPresentation:
    names = [f"s{i}:3" for i in range(1, n + 1)]
    names += [f"x{i}{j}:2" for i in range(1, n + 1) for j in range(i, n + 1)]
    relations = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            left = f"s{i}^2" if i == j else f"s{i}*s{j}"
            relations.append(f"{left} - x{i}{j}^3")
    return RingPresentation.of(", ".join(names), relations, name=f"family-{n}")


@pytest.fixture(autouse=True)
def default_budget():
    configure_budget(Budget())
    yield
    configure_budget(Budget())


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture
def ci():
    return ci_ring()


@pytest.fixture
def ci_y3():
    return ci_ring("y^3")


@pytest.fixture
def weighted_xy():
    return RingPresentation.of("x:2, y:3", name="weighted")


@pytest.fixture
def polyring2():
    return RingPresentation.of("x, y", name="polyring2")


@pytest.fixture
def fresh_cache():
    clear_cache()
    yield
    clear_cache()
