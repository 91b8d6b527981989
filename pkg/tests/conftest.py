import random

import pytest

from lexinfo.lexmatrix import LexicalMatrix


def fig1a(vs_max=2):
    return LexicalMatrix.from_edges(vs_max, 4, [(0, 0), (1, 1)])


def fig1b(vs_max=2):
    return LexicalMatrix.from_edges(vs_max, 4, [(0, 0), (0, 3), (1, 1), (1, 2)])


def fig1c(vs_max=2):
    return LexicalMatrix.from_edges(vs_max, 4, [(0, 0)])


def random_matrix(rng: random.Random, vs_max: int, vr_max: int, nonempty: bool = True) -> LexicalMatrix:
    while True:
        code = rng.getrandbits(vs_max * vr_max)
        if code or not nonempty:
            return LexicalMatrix.from_code(vs_max, vr_max, code)


@pytest.fixture
def rng():
    return random.Random(20240601)


# -- acceptance summary: one line per criterion -------------------------------

_CRITERIA: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[name] = (report.outcome.upper(), report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, (outcome, duration) in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"{outcome:7s} {name} ({duration:.2f}s)")
