import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

SEED = int(os.environ.get("PENTA_SEED", "20240611"))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def pytest_report_header(config):
    return f"PENTA_SEED={SEED}"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
