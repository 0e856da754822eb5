from fractions import Fraction as Q

import pytest
from hypothesis import HealthCheck, settings

from localh.triangulation import Triangulation

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# A triangle drawn in the plane, subdivided into a triforce whose lower-left
# corner is refined further around one interior point.
PLANAR_REF = [(Q(0), Q(0)), (Q(1), Q(0)), (Q(1, 2), Q(4, 5))]
M01, M12, M02 = (Q(1, 2), Q(0)), (Q(3, 4), Q(2, 5)), (Q(1, 4), Q(2, 5))
A, B, C = (Q(1, 4), Q(0)), (Q(1, 8), Q(1, 5)), (Q(1, 4), Q(2, 15))


def _planar(cells):
    return Triangulation.from_cell_coordinates(PLANAR_REF, cells)


@pytest.fixture
def planar_triforce():
    v0, v1, v2 = PLANAR_REF
    return _planar([(v0, M01, M02), (v1, M01, M12), (v2, M12, M02), (M01, M12, M02)])


@pytest.fixture
def planar_refined():
    v0, v1, v2 = PLANAR_REF
    corner = [(C, M02, B), (C, B, v0), (C, v0, A), (C, A, M01), (C, M01, M02)]
    return _planar([(v1, M01, M12), (v2, M12, M02), (M01, M12, M02)] + corner)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
