from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from tricyclic.gf2poly import Gf2Poly
from tricyclic.search import random_valid_spec
from tricyclic.triplecode import TripleSpec, read_spec

DATA = Path(__file__).parent / "data"


def polys(max_deg: int = 64, nonzero: bool = False) -> st.SearchStrategy[Gf2Poly]:
    lo = 1 if nonzero else 0
    return st.integers(lo, (1 << (max_deg + 1)) - 1).map(Gf2Poly)


def valid_specs(lo: int = 1, hi: int = 7) -> st.SearchStrategy[TripleSpec]:
    """Uniform block lengths, then a random valid spec of that shape."""
    n = st.integers(lo, hi)
    return st.builds(
        lambda r, s, t, seed: random_valid_spec(r, s, t, random.Random(seed)),
        n, n, n, st.integers(0, 2**32),
    )


@pytest.fixture
def ex777() -> TripleSpec:
    return read_spec(DATA / "ex777.spec")


@pytest.fixture
def ex645() -> TripleSpec:
    return read_spec(DATA / "ex645.spec")


@pytest.fixture
def ex101215() -> TripleSpec:
    return read_spec(DATA / "ex101215.spec")


# criterion number -> list of (part, passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[num]
        ok = all(p for _, p, _ in parts)
        detail = "; ".join(f"{name}: {d}" for name, _, d in parts)
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
