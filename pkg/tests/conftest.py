import pytest

from twistkit.modular import EllipticCurve, ap_table, quadratic_twist

CUTOFF = 10_000


@pytest.fixture(scope="session")
def table_11():
    """a_p table for y^2 = x^3 + x + 1, p <= 10^4."""
    return ap_table(EllipticCurve(1, 1), CUTOFF)


@pytest.fixture(scope="session")
def table_11_twisted():
    """a_p table for the d = -1 quadratic twist of y^2 = x^3 + x + 1."""
    return ap_table(quadratic_twist(EllipticCurve(1, 1), -1), CUTOFF)


@pytest.fixture(scope="session")
def table_23():
    """a_p table for the unrelated non-CM curve y^2 = x^3 + 2x + 3."""
    return ap_table(EllipticCurve(2, 3), CUTOFF)
