import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("tentops", deadline=None, max_examples=40)
settings.load_profile("tentops")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def disk_points(rng, n, radius=0.95):
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


# acceptance criterion number -> (title, passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if passed else 'FAIL'}  {title}  ({detail})")
