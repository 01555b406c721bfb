import pytest
from hypothesis import HealthCheck, settings

from weilstat.curves import HyperellipticCurve

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def cm_curve():
    return HyperellipticCurve(2, (-1, 0, 0, 0, 0, 1), "y^2=x^5-1")


@pytest.fixture(scope="session")
def generic_curve():
    return HyperellipticCurve(2, (1, -1, 0, 0, 0, 1), "y^2=x^5-x+1")


@pytest.fixture(scope="session")
def elliptic_curve():
    return HyperellipticCurve(1, (1, 1, 0, 1), "y^2=x^3+x+1")


@pytest.fixture(scope="session")
def generic_weil_fixtures(generic_curve):
    """Frobenius polynomials of y^2=x^5-x+1 at the first 200 good primes
    where they are irreducible."""
    from weilstat.algebra.factor_z import factor_over_z
    from weilstat.algebra.primes import primes_up_to
    from weilstat.curves import frobenius_poly

    out = []
    for p in primes_up_to(5000):
        if not generic_curve.has_good_reduction(p):
            continue
        P = frobenius_poly(generic_curve, p)
        if factor_over_z(P.poly).is_irreducible():
            out.append(P)
        if len(out) == 200:
            break
    return out
