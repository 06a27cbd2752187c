from fractions import Fraction as F

import pytest
from hypothesis import strategies as st

from geokernel.kernel import Point

# small grid so coincidences and collinearity actually occur
coord = st.builds(F, st.integers(-4, 4), st.sampled_from([1, 1, 1, 2, 3]))
xy = st.tuples(coord, coord)


def to_point(t):
    return Point.of(*t)


points = xy.map(to_point)


# -- acceptance report: one line per criterion, shown even under capture

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance():
    def record(n: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
        ACCEPTANCE[n] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
