import os
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

from towercalc.towers import TowerContext

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("fast", settings.get_profile("default"), max_examples=5)
settings.register_profile("thorough", settings.get_profile("default"),
                          max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def ctx3():
    """A shared dimension-3 tower context; families are cached inside."""
    return TowerContext(3)


@pytest.fixture(scope="session")
def ctx5():
    return TowerContext(5)


# ---------------------------------------------------------------------------
# acceptance reporting: one PASS/FAIL line per criterion at the end of the run
# ---------------------------------------------------------------------------

_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Context manager recording a criterion outcome for the final summary."""

    @contextmanager
    def run(num: int, desc: str):
        try:
            yield
        except BaseException:
            _ACCEPTANCE[num] = (False, desc)
            raise
        else:
            _ACCEPTANCE[num] = (True, desc)

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        ok, desc = _ACCEPTANCE[num]
        terminalreporter.write_line(
            f"ACCEPTANCE {num} {'PASS' if ok else 'FAIL'} — {desc}")
