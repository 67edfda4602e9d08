import pytest

from convexdecomp.geometry import PointSet

FIVE = [(0, 0), (4, 0), (5, 3), (2, 1), (0, 4)]

# 15 points: p1 at the origin, p2 and p15 far out so the hull is a triangle,
# signs for p3..p14 are --+++--+++-- (three negative runs, k = 4)
FIFTEEN = [
    (0, 0), (40000, 1200), (670, 201), (661, 416), (764, 627), (583, 963),
    (414, 1094), (115, 1047), (-138, 1032), (-369, 1076), (-556, 902),
    (-703, 616), (-709, 400), (-724, 239), (-40000, 1200),
]

ACCEPTANCE_LINES = []


@pytest.fixture
def five():
    return PointSet(FIVE)


@pytest.fixture
def fifteen():
    return PointSet(FIFTEEN)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
