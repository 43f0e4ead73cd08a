from __future__ import annotations

import random
from pathlib import Path

import pytest

from holoviz.ingest import ingest_csv

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def iris_bytes() -> bytes:
    return (FIXTURES / "iris.csv").read_bytes()


@pytest.fixture(scope="session")
def iris_dataset(iris_bytes):
    return ingest_csv(iris_bytes, dataset_id="iris")


def random_cell(rng: random.Random) -> str:
    """Arbitrary text cell: may contain quotes, delimiters, and newlines."""
    alphabet = 'abcXYZ019 ,;"\n\r\té世'
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 6)))
