import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_hermitian(rng, d, scale=1.0):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * (a + a.conj().T) / 2


_ACCEPTANCE = {}


class Criterion:
    """Collects checks for one acceptance criterion and times it."""

    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failures = []
        self.notes = []

    def check(self, ok, message):
        if not ok:
            self.failures.append(message)
        else:
            self.notes.append(message)

    @property
    def passed(self):
        return not self.failures


@pytest.fixture
def criterion(request):
    made = []

    def make(number, title):
        c = Criterion(number, title)
        made.append(c)
        return c

    yield make
    for c in made:
        _ACCEPTANCE[c.number] = c
        assert c.passed, f"criterion {c.number} failed: " + "; ".join(c.failures)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        c = _ACCEPTANCE[n]
        status = "PASS" if c.passed else "FAIL"
        detail = "; ".join(c.failures if c.failures else c.notes)
        terminalreporter.write_line(f"criterion {n} [{status}] {c.title}: {detail}")
