import numpy as np
import pytest

from psgauss.immersion import Factor, Immersion, Term, TermChart
from psgauss.linalg import Signature


def term(coef, *factors):
    return Term(coef, factors)


@pytest.fixture(scope="session")
def skewed_graph():
    """Non-minimal hypersurface of the round 3-sphere.

    Nested spherical angles with a skewed third angle keep the chart exactly
    unit-norm while making the mean curvature vary, so the normal derivative
    of the mean curvature vector is nonzero.
    """
    F = Factor
    a, b = 0.4, 0.3
    chart = TermChart(2, (
        (term(1.0, F("cos", (1, 0))),),
        (term(1.0, F("sin", (1, 0)), F("cos", (0, 1))),),
        (term(1.0, F("sin", (1, 0)), F("sin", (0, 1)), F("cos", (a, b))),),
        (term(1.0, F("sin", (1, 0)), F("sin", (0, 1)), F("sin", (a, b))),),
    ))
    return Immersion(
        Signature(4, 0), 2, 0, ((0.4, 1.3), (0.4, 1.4)), chart,
        label="skewed_sphere_graph",
    )


@pytest.fixture(scope="session")
def veronese():
    """Minimal surface in the 4-sphere with curved normal bundle."""
    F = Factor
    s3 = np.sqrt(3.0)
    chart = TermChart(2, (
        (term(s3, F("cos", (1, 0)), F("cos", (1, 0)),
              F("cos", (0, 1)), F("sin", (0, 1))),),
        (term(s3, F("cos", (1, 0)), F("sin", (1, 0)), F("cos", (0, 1))),),
        (term(s3, F("cos", (1, 0)), F("sin", (1, 0)), F("sin", (0, 1))),),
        (term(s3 / 2, F("cos", (1, 0)), F("cos", (1, 0)), F("cos", (0, 2))),),
        (term(0.5), term(-1.5, F("sin", (1, 0)), F("sin", (1, 0)))),
    ))
    return Immersion(
        Signature(5, 0), 2, 0, ((0.2, 1.2), (0.3, 2.6)), chart,
        label="veronese",
    )


@pytest.fixture(scope="session")
def probe_points():
    return [np.array([0.6, 0.9]), np.array([1.1, 0.6]), np.array([0.45, 1.2])]
