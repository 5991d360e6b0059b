from __future__ import annotations

import dataclasses

import pytest

from krcert.data import COORDINATE_CHANGE, COORDINATE_CHANGE_INVERSE, danielewski_data, kr_data, kr_rings
from krcert.derivation import Derivation, NilpotencyCertificate, lnd_certify, well_defined
from krcert.geometry import Ansatz, NoSolutionWithinAnsatz, RingMorphism, check_inverse_pair, split_cocycle
from krcert.theta import DescentError, build_theta, clear_denominators, conjugate_by, conjugate_derivation


def _split(c, bundle, max_degree=8):
    for degree in range(max_degree + 1):
        w = split_cocycle(c, bundle.chart, Ansatz(bundle.ansatz_generators, degree))
        if not isinstance(w, NoSolutionWithinAnsatz):
            return w
    raise AssertionError("no splitting found")


def _theta(data):
    return build_theta(data, _split(data.cocycle_first, data.second), _split(data.cocycle_second, data.first))


@pytest.fixture(scope="module")
def kr_theta():
    return _theta(kr_data())


def test_theta_is_an_isomorphism_fixing_the_base(kr_theta):
    assert kr_theta.ok, kr_theta.checks
    fwd = kr_theta.forward
    for g in ("x", "t"):
        assert fwd.images[g] == fwd.target.var(g)
    assert fwd.target.equal(fwd.images["y"], fwd.target("x^2*w + y - 1/2*x*y*z*t^-3 - 1/2*x*y*t^-3"))


def test_conjugate_and_cleared_derivation(kr_theta):
    fwd, inv = kr_theta.forward, kr_theta.inverse
    d = Derivation(fwd.target, {"x": "2*y", "y": "z"}, name="d")
    res = conjugate_derivation(d, fwd, inv)
    assert isinstance(res.certificate, NilpotencyCertificate)
    assert all(res.checks.values())
    delta = res.derivation
    assert delta.images["t"].is_zero() and not delta.images["x"].is_zero()

    A2w = kr_rings()["A'"].adjoin("w")
    cleared = clear_denominators(delta, A2w)
    assert cleared.k == 3
    assert all(cleared.checks.values())

    Aw = kr_rings()["A"].adjoin("w")
    to_a2 = RingMorphism(Aw, A2w, {**COORDINATE_CHANGE, "w": "w"})
    back = RingMorphism(A2w, Aw, {**COORDINATE_CHANGE_INVERSE, "w": "w"})
    assert check_inverse_pair(to_a2, back)
    partial = conjugate_by(cleared.derivation, to_a2, back)
    assert well_defined(partial)
    assert isinstance(lnd_certify(partial), NilpotencyCertificate)
    assert Aw.equal(partial.images["x"], Aw("2*x*t^3*w + 2*i*z*t^3"))
    assert partial.images["t"].is_zero()


def test_danielewski_theta_and_conjugate():
    data = danielewski_data()
    th = _theta(data)
    assert th.ok, th.checks
    d = Derivation(th.forward.target, data.cylinder_derivation)
    res = conjugate_derivation(d, th.forward, th.inverse, killed=())
    assert isinstance(res.certificate, NilpotencyCertificate)
    assert not res.derivation.images["x"].is_zero()


def test_broken_parity_fails_descent():
    data = kr_data()
    h2 = _split(data.cocycle_first, data.second)
    h1 = _split(data.cocycle_second, data.first)
    bad = dataclasses.replace(h2, chart_solution=h2.chart_solution + h2.chart.chart.var("mu"))
    with pytest.raises(DescentError):
        build_theta(data, bad, h1)
