from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from hermite_pade.poly import Poly

GOLDEN = Path(__file__).parent / "golden"


def load_golden(name: str) -> dict:
    return json.loads((GOLDEN / name).read_text())


def random_poly(rng: random.Random, nvars: int, terms: int = 3, degree: int = 2, coeff: int = 5) -> Poly:
    out = {}
    for _ in range(rng.randint(0, terms)):
        mono = tuple(rng.randint(0, degree) for _ in range(nvars))
        out[mono] = out.get(mono, 0) + rng.randint(-coeff, coeff)
    return Poly(out, nvars)


def random_int_matrix(rng: random.Random, rows: int, cols: int, bound: int = 6) -> list:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


@pytest.fixture
def rng():
    return random.Random(12345)
