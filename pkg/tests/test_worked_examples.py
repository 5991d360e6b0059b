"""Small hand-checkable cases across the modules."""

from __future__ import annotations

from fractions import Fraction

import pytest

from krcert.data import PHI1, PHI2, kr_data, kr_derivations, kr_rings, ring
from krcert.derivation import (Derivation, Inconclusive, exponential, kernel_intersection_bounded, lnd_certify,
                               span_equal, well_defined)
from krcert.exact import GaussianRational, LinearSystem, solve_linear
from krcert.geometry import RingFraction, RingMorphism, check_morphism, identity
from krcert.ideal import PresentedRing, irreducible_linear_in
from krcert.parse import PolySyntaxError, parse_poly, print_poly
from krcert.poly import RingSpec, partial_derivative, pole_order, substitute
from krcert.theta import clear_denominators, conjugate_by

G = GaussianRational


def test_scalars():
    assert G(1, 1) * G(1, -1) == G(2)
    assert G(2, 1).inverse() == G(Fraction(2, 5), Fraction(-1, 5))


@pytest.mark.parametrize("matrix, rhs, solution, nullity", [
    ([[1, 0], [0, 1]], [3, 4], (3, 4), 0),
    ([[1, 1], [2, 2]], [1, 2], (1, 0), 1),
    ([[1, 1], [1, -1]], [0, 0], (0, 0), 0),
])
def test_small_linear_systems(matrix, rhs, solution, nullity):
    sol = solve_linear(LinearSystem(matrix, rhs))
    assert sol.solution == tuple(G(v) for v in solution) and sol.rank_deficiency == nullity
    if nullity:
        assert sol.nullspace[0] == (G(-1), G(1))


def test_polynomial_products():
    R = RingSpec.parse("v, x, y, mu^±1")
    assert R("(y - mu^3)*(y + mu^3)") == R("y^2 - mu^6")
    assert R("(mu^3 + x*v)^2") == R("mu^6 + 2*mu^3*x*v + x^2*v^2")
    L = RingSpec.parse("x^±1")
    assert L("x^-1*x") == L.one()


def test_partials_and_pole_orders():
    R = RingSpec.parse("x, y, z, t^±1")
    assert partial_derivative(R("z^2"), "z") == R("2*z")
    assert partial_derivative(R("t^-1"), "t") == R("-t^-2")
    assert partial_derivative(R("x^2*y"), "y") == R("x^2")
    Z = RingSpec.parse("x^±1, mu^±1, y")
    assert pole_order(Z("2*mu^3*x^-1"), "x") == 1
    assert pole_order(Z("2*mu^3*x^-1 + mu^-3*x^-1 - 2*mu^3*x^-2"), "x") == 2
    assert pole_order(Z("y^2 - mu^6"), "x") == 0


def test_parser_cases():
    R = RingSpec.parse("x, y, z, t")
    assert R("x^2*z - y^2 - x + t^3") == kr_rings()["A'"].relations[0]
    assert print_poly(parse_poly("-1/2*i*x", R)) == "-1/2*i*x"
    with pytest.raises(PolySyntaxError):
        parse_poly("x^-1", R)


def test_substitution_cases(A):
    P = RingSpec.parse("x, y, z, t")
    images = {"x": P("-x"), "y": P("z"), "z": P("i*y"), "t": P("t")}
    assert substitute(P("x + x^2*y + z^2 + t^3"), images, P) == P("x^2*z - y^2 - x + t^3")
    C = RingSpec.parse("v, x, mu^±1")
    phi1 = {k: C(v) for k, v in PHI1.items()}
    S = RingSpec.parse("x, y, z, t^±1")
    assert substitute(S("x*z - y^2 + t^3"), phi1, C) == C.zero()
    phi2 = {k: C(v) for k, v in PHI2.items()}
    assert substitute(S("x^2*z - y^2 - x + t^3"), phi2, C) == C.zero()
    p = A("x*y + t")
    assert identity(A)(p) == A.normal_form(p)


def test_groebner_cases():
    Q = PresentedRing(RingSpec.parse("x^±1"))
    assert Q.is_zero(Q.spec.zero()) and Q.normal_form(Q("x*x^-1")) == Q.spec.one()
    B2 = PresentedRing(RingSpec.parse("x, y, z, t"), ["x^2*z - y^2 - x + t^3"])
    (g,) = B2.groebner()
    assert g == B2.relations[0] or g == -B2.relations[0]
    X2 = kr_data().second.cover.total
    assert X2.is_zero(X2("y^2 - mu^6 - x^2*z + x"))
    assert X2.contains_one([X2("x"), X2("y + mu^3"), X2("y - mu^3")])
    assert not B2.ideal_member(B2("y"))
    assert PresentedRing(RingSpec.parse("x")).radical_member("x", ["x^2"])
    B2t = ring("x, y, z, t^±1", "x^2*z - y^2 - x + t^3")
    assert B2t.normal_form(B2t("x")) == B2t("x")


def test_eliminations():
    T = PresentedRing(RingSpec.parse("mu^±1, t^±1"), ["t - mu^2"])
    assert all("mu" not in str(g) for g in T.eliminate(["mu"]))
    graph = PresentedRing(RingSpec.parse("v, mu^±1, x, y, z, t^±1"),
                          ["y - mu^3 - x*v", "z - 2*mu^3*v - x*v^2", "t - mu^2"])
    elim = graph.eliminate(["v", "mu"])
    target = graph("x*z - y^2 + t^3")
    assert PresentedRing(graph.spec, elim).is_zero(target)


@pytest.mark.parametrize("text, verdict", [
    ("x^2*z - y^2 - x + t^3", "irreducible"),
    ("x*z - y^2 + t^3", "irreducible"),
    ("x*z - x", "reducible"),
])
def test_linear_irreducibility(text, verdict):
    assert irreducible_linear_in(RingSpec.parse("x, y, z, t")(text), "z").verdict == verdict


def test_derivation_cases(A):
    d1, d2 = kr_derivations(A)
    rel = A.relations[0]
    assert A.is_zero(d1.raw_apply(rel)) and A.is_zero(d2.raw_apply(rel))
    B1 = ring("x, y, z, t^±1", "x*z - y^2 + t^3")
    B2 = ring("x, y, z, t^±1", "x^2*z - y^2 - x + t^3")
    assert well_defined(Derivation(B2, {"y": "x^2", "z": "2*y"}))
    assert well_defined(Derivation(B1, {"y": "x", "z": "2*y"}))
    assert well_defined(Derivation(B1.adjoin("w"), {"x": "2*y", "y": "z"}))
    assert not well_defined(Derivation(B2, {"x": 1}))
    assert lnd_certify(Derivation(B1, {"y": "x", "z": "2*y"})).indices == {"x": 1, "y": 2, "z": 3, "t": 1}
    assert isinstance(lnd_certify(Derivation(ring("x"), {"x": "x"}), 64), Inconclusive)


def test_exponential_of_the_chart_action():
    B1 = ring("x, y, z, t^±1", "x*z - y^2 + t^3")
    D = Derivation(B1, {"y": "x", "z": "2*y"})
    E = exponential(D, lnd_certify(D), "s")
    S = E.target
    assert S.equal(E.images["y"], S("y + s*x")) and S.equal(E.images["z"], S("z + 2*s*y + s^2*x"))
    assert E.images["x"] == S("x") and E.images["t"] == S("t")


def test_kernel_cases(A):
    d1, d2 = kr_derivations(A)
    assert d1.apply(A("x")).is_zero() and d1.apply(A("t")).is_zero() and not d1.apply(A("y")).is_zero()
    assert span_equal(kernel_intersection_bounded([d1, d2], 3), [A(p) for p in ("1", "x", "x^2", "x^3")])
    P = ring("x, y")
    assert span_equal(kernel_intersection_bounded([Derivation(P, {"y": "x"})], 2), [P(p) for p in ("1", "x", "x^2")])
    assert span_equal(kernel_intersection_bounded([d1], 1), [A(p) for p in ("1", "x", "t")])


def test_morphism_cases():
    C = ring("v, x, mu^±1")
    B1 = ring("x, y, z, t^±1", "x*z - y^2 + t^3")
    assert check_morphism(RingMorphism(B1, C, PHI1, {"t": "mu^-2"}))
    assert not check_morphism(RingMorphism(B1, C, {**PHI1, "y": "mu^3 + x*v^2"}, {"t": "mu^-2"}))


def test_splitting_alternative_representations():
    data = kr_data()
    X2 = data.second.cover.total
    assert RingFraction(X2, "y - mu^3", "x").equals(RingFraction(X2, "x*z - 1", "y + mu^3"))
    X1 = data.first.cover.total
    assert RingFraction(X1, "y - mu^3", "x").equals(RingFraction(X1, "z", "y + mu^3"))


def test_conjugation_by_identity_and_clearing():
    B = ring("x, y, t^±1")
    D = Derivation(B, {"y": "x*t^-3"})
    same = conjugate_by(D, identity(B), identity(B))
    assert same.images == D.images
    target = ring("x, y, t")
    cleared = clear_denominators(D, target)
    assert cleared.k == 3 and cleared.derivation.images["y"] == target("x")
    poly = Derivation(B, {"y": "x"})
    assert clear_denominators(poly, target).k == 0
    assert clear_denominators(poly.scaled("t^-3"), target).k == 3
