import pytest

from lpbsa.casestudy import case_study_problem
from lpbsa.core import Individual

# Initial population of the worked example (id, x1, x2, fitness).
TABLE_POPULATION = [
    ("B1", 4320, 3120, 28396800),
    ("B2", 1233, 4523, 21977818),
    ("B3", 5100, 3209, 36307681),
    ("B4", 4355, 5210, 46110125),
    ("B5", 2331, 4266, 23632317),
    ("B6", 2040, 2755, 11751625),
    ("B7", 5043, 1977, 29340378),
    ("B8", 3460, 4781, 34829561),
    ("B9", 1920, 5510, 34046500),
    ("B10", 4222, 3741, 31820365),
    ("B11", 5401, 1740, 32198401),
    ("B12", 3351, 2850, 19351701),
    ("B13", 5201, 4989, 51940522),
    ("B14", 2188, 3477, 16876873),
    ("B15", 3409, 1877, 15144410),
    ("B16", 4560, 2776, 28499776),
]


@pytest.fixture
def case_problem():
    return case_study_problem()


@pytest.fixture
def table_population():
    return [Individual((x1, x2), f, i) for i, x1, x2, f in TABLE_POPULATION]


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
