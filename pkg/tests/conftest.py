from __future__ import annotations

from pathlib import Path

import pytest

from multhull.census import enumerate_semigroups

DATA = Path(__file__).resolve().parents[1] / "src" / "multhull" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def census3():
    """Every labeled semigroup of order 1..3."""
    return [S for n in (1, 2, 3) for S in enumerate_semigroups(n)]
