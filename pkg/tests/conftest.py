from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# derandomized so every run is reproducible byte for byte
settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

ROTATION = np.array([[0.0, -1.0], [1.0, 0.0]])
NILPOTENT = np.array([[0.0, 1.0], [0.0, 0.0]])
JORDAN_ONE = np.array([[1.0, 1.0], [0.0, 1.0]])
SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
SYM_METZLER = np.array([[-1.0, 1.0], [1.0, -1.0]])
DIAG01 = np.diag([0.0, -1.0])
HALF_ONES = 0.5 * np.ones((2, 2))


def random_matrix(rng: np.random.Generator, n: int, norm: float = 2.0, complex_: bool = True) -> np.ndarray:
    M = rng.standard_normal((n, n))
    if complex_:
        M = M + 1j * rng.standard_normal((n, n))
    return M * (norm / np.linalg.norm(M, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


_SESSION_START = [0.0]
SUITE_SECONDS = 120.0


def pytest_sessionstart(session):
    import time

    _SESSION_START[0] = time.perf_counter()


def _wall_clock() -> float:
    import time

    return time.perf_counter() - _SESSION_START[0]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = list(getattr(mod, "RESULTS", []))
    if not lines:
        return
    elapsed = _wall_clock()
    lines.append(
        f"criterion 9 suite wall-clock: {'PASS' if elapsed < SUITE_SECONDS else 'FAIL'} "
        f"({elapsed:.1f} s < {SUITE_SECONDS:g} s)"
    )
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)


def pytest_sessionfinish(session, exitstatus):
    import sys

    if "test_acceptance" in sys.modules and _wall_clock() >= SUITE_SECONDS and exitstatus == 0:
        session.exitstatus = 1
