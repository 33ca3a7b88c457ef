import numpy as np
import pytest

from linrel import relation as rel
from linrel import subspace as sp

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, passed: bool, detail: str = "") -> bool:
    status = "PASS" if passed else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_subspace(rng, n, r):
    return sp.span_columns(rng.standard_normal((n, r)))


def random_relation(rng, dH, dK, g=None):
    if g is None:
        g = int(rng.integers(0, dH + dK + 1))
    return rel.LinearRelation(dH, dK, sp.span_columns(rng.standard_normal((dH + dK, g))))


def assert_same(S1, S2, atol=1e-10):
    """Equality of subspaces or relations by principal angles."""
    if isinstance(S1, rel.LinearRelation):
        assert S1.shape == S2.shape
        S1, S2 = S1.graph, S2.graph
    assert S1.rank == S2.rank, f"ranks differ: {S1.rank} vs {S2.rank}"
    assert sp.distance(S1, S2) < atol
