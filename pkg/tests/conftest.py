import functools

import pytest
from hypothesis import settings

from k3mirror import data
from k3mirror.pipeline import build_polytopes, verify_pair

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES = []

CUBE = [[x, y, z] for x in (1, -1) for y in (1, -1) for z in (1, -1)]
OCTAHEDRON = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]


@functools.lru_cache(maxsize=None)
def pair(name):
    return build_polytopes(data.case_by_name(name))


@functools.lru_cache(maxsize=None)
def report(name):
    return verify_pair(data.case_by_name(name))


def all_builtins():
    out = []
    for c in data.CASES:
        out.extend(pair(c.name))
    return out


@pytest.fixture(params=[c.name for c in data.CASES])
def case(request):
    return data.case_by_name(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
