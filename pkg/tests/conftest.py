import numpy as np
import pytest
from hypothesis import settings

from staggered_walk.kernels import BACKENDS
from staggered_walk.state import AmplitudeField, Circle, Line

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def random_field(seed: int, n_lo: int = -20, n_sites: int = 40, circle: bool = False, pad: int = 4):
    """Unit-norm random field; on a line the outer ``pad`` sites on each side stay empty."""
    rng = np.random.default_rng(seed)
    amps = np.zeros(n_sites, dtype=complex)
    inner = slice(0, None) if circle else slice(pad, n_sites - pad)
    m = amps[inner].size
    amps[inner] = rng.normal(size=m) + 1j * rng.normal(size=m)
    amps /= np.linalg.norm(amps)
    if circle:
        return AmplitudeField(amps, 0, Circle(n_sites))
    return AmplitudeField(amps, n_lo, Line())


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return request.param


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion; printed in the terminal summary."""

    def record(label: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
