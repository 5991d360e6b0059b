from __future__ import annotations

import pytest
import sympy

from krcert import certificates as C
from krcert.data import COORDINATE_CHANGE, COORDINATE_CHANGE_INVERSE, kr_data, kr_rings
from krcert.geometry import (Ansatz, Cocycle, DoubleCover, MorphismError, NoSolutionWithinAnsatz, RingFraction,
                             RingMorphism, check_deck_identity, check_inverse_pair, check_morphism, compose,
                             identity, is_coboundary_on_base, split_cocycle)


@pytest.fixture(scope="module")
def data():
    return kr_data()


def _split(c, bundle, max_degree):
    for degree in range(max_degree + 1):
        w = split_cocycle(c, bundle.chart, Ansatz(bundle.ansatz_generators, degree))
        if not isinstance(w, NoSolutionWithinAnsatz):
            return degree, w
    return None, None


def test_coordinate_change_is_an_isomorphism():
    rings = kr_rings()
    A, A2 = rings["A"], rings["A'"]
    fwd = RingMorphism(A, A2, COORDINATE_CHANGE)
    back = RingMorphism(A2, A, COORDINATE_CHANGE_INVERSE)
    assert check_morphism(fwd) and check_morphism(back)
    assert check_inverse_pair(fwd, back)
    assert check_morphism(compose(back, fwd)) and compose(back, fwd)(A("y")) == identity(A)(A("y"))


def test_non_morphism_is_rejected():
    A = kr_rings()["A"]
    bad = RingMorphism(A, A, {"x": "x + 1", "y": "y", "z": "z", "t": "t"})
    assert not check_morphism(bad)
    with pytest.raises(MorphismError):
        RingMorphism(A, A, {"x": "x"})


def test_covers_are_free_involutions(data):
    assert data.base_cover.check()
    for b in (data.first, data.second):
        assert b.cover.check()
        assert b.chart.check_reps()


def test_deck_identities_hold_and_fail_for_a_wrong_shift(data):
    for b in (data.first, data.second):
        assert check_deck_identity(b.phi_base, b.chart)
    wrong = data.first.chart.localized()("mu^3 * x^-1")
    assert not check_deck_identity(data.first.phi_base, data.first.chart, wrong)


def test_cocycles_are_antisymmetric(data):
    assert data.cocycle_first.antisymmetric() and data.cocycle_second.antisymmetric()
    with pytest.raises(ValueError):
        Cocycle(data.base_cover, RingFraction(data.base_cover.total, "mu^2", "x"))


def test_fraction_arithmetic(data):
    Z = data.base_cover.total
    a, b = RingFraction(Z, "mu", "x"), RingFraction(Z, "1", "x^2")
    assert (a + b).equals(RingFraction(Z, "mu*x + 1", "x^2"))
    assert (a - a).equals(RingFraction(Z, 0))
    assert RingFraction(Z, "x^2*mu", "x^3").simplified().describe() == {"numerator": "mu", "denominator": "x"}


def test_first_cocycle_splits_on_second_cover(data):
    degree, w = _split(data.cocycle_first, data.second, 4)
    assert degree is not None and degree <= 4
    assert w.verify()
    cover = data.second.cover.total
    assert w.h_plus.equals(RingFraction(cover, "y - mu^3", "x"))


def test_second_cocycle_splits_on_first_cover(data):
    degree, w = _split(data.cocycle_second, data.first, 8)
    assert degree is not None and degree <= 8
    assert w.verify()
    cover = data.first.cover.total
    reference = RingFraction(cover, "-1/2*(mu^-3*(y - mu^3)^2 + mu^-6*x*(y - mu^3) + mu^-6*x*z*(y - mu^3))", "x^2")
    sigma = data.first.cover.sigma
    diff = w.h_plus - reference
    assert (reference.mapped(sigma) - reference).equals(data.cocycle_second.value.to_ring(cover))
    assert diff.mapped(sigma).equals(diff)


def test_low_degree_ansatz_reports_no_solution(data):
    w = split_cocycle(data.cocycle_second, data.first.chart, Ansatz(data.first.ansatz_generators, 1))
    assert isinstance(w, NoSolutionWithinAnsatz) and not w


MU, X, Y, Z_ = sympy.symbols("mu x y z")


def _sym(text):
    return sympy.sympify(text.replace("^", "**"), locals={"mu": MU, "x": X, "y": Y, "z": Z_, "i": sympy.I})


@pytest.mark.parametrize("which", ["first_on_second", "second_on_first"])
def test_splittings_recheck_with_sympy(data, which):
    c, bundle, bound = ((data.cocycle_first, data.second, 4) if which == "first_on_second"
                        else (data.cocycle_second, data.first, 8))
    _, w = _split(c, bundle, bound)
    relation = _sym(str(bundle.cover.total.relations[0]))
    cval = _sym(str(c.value.num)) / _sym(str(c.value.den))
    for rep in w.representations():
        h = _sym(str(rep.num)) / _sym(str(rep.den))
        expr = sympy.together(h.subs(MU, -MU) - h - cval)
        num = sympy.numer(expr)
        num = sympy.expand(num * MU ** 30)
        _, rem = sympy.reduced(num, [relation], X, Y, Z_, MU, order="grevlex")
        assert sympy.expand(rem) == 0


def test_splitting_certificate_replays(data):
    _, w = _split(data.cocycle_first, data.second, 4)
    cover = data.second.cover
    cert = C.splitting_cert(cover.total, cover.sigma, data.cocycle_first.value.to_ring(cover.total),
                            w.representations(), w.excluded_locus)
    assert C.replay(cert)
    cert["cocycle"] = {"numerator": "mu^3", "denominator": "x"}
    assert not C.replay(cert)


def test_cocycles_are_not_cohomologous(data):
    verdict = is_coboundary_on_base(data.cocycle_first, data.cocycle_second)
    assert verdict.status == "refuted" and verdict.pole_order == 2


def test_cohomologous_pair_is_recognized(data):
    Zs = data.base_cover.total
    g = Zs("mu*x^2 + mu^3")
    moved = data.base_cover.sigma(g) - g
    v = data.cocycle_first.value
    other = Cocycle(data.base_cover, RingFraction(Zs, v.num + moved * v.den, v.den))
    verdict = is_coboundary_on_base(data.cocycle_first, other)
    assert verdict.status == "coboundary"


def test_identity_is_not_a_cover_involution(data):
    assert not DoubleCover(data.base_cover.total, {}, ("x",)).check()
