from __future__ import annotations

import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from krcert.data import kr_rings
from krcert.exact import GaussianRational
from krcert.poly import LaurentPoly, RingSpec

settings.register_profile("krcert", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("krcert")

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, small_fractions, small_fractions)
nonzero_gaussians = gaussians.filter(lambda z: not z.is_zero())

POLY_RING = RingSpec.parse("x, y, t^±1")


def laurent_polys(ring: RingSpec = POLY_RING, max_terms: int = 4, max_exp: int = 2):
    exps = st.tuples(*[st.integers(-max_exp if inv else 0, max_exp) for inv in ring.invertible])
    coeffs = st.builds(GaussianRational, st.integers(-5, 5), st.integers(-3, 3))
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: LaurentPoly(ring, d))


@pytest.fixture(scope="session")
def A():
    return kr_rings()["A"]


@pytest.fixture(scope="session")
def A_rewritten():
    return kr_rings()["A'"]



def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.summary_line(n))
