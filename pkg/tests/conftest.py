from __future__ import annotations

import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from helpers import ACCEPTANCE_LINES


def _criterion_order(key: str):
    """'1 p=11' -> (1, '', 11); '9a' -> (9, 'a', 0)."""
    head, _, tail = key.partition(" p=")
    digits = "".join(ch for ch in head if ch.isdigit())
    return int(digits), head[len(digits):], int(tail or 0)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=_criterion_order):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
