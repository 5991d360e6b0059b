from __future__ import annotations

import time

import pytest
from conftest import laurent_polys
from hypothesis import given
from oracles import sympy_joint_kernel_dimension
from hypothesis import strategies as st

from krcert.data import kr_derivations
from krcert.derivation import (Derivation, Inconclusive, NilpotencyCertificate, exponential,
                               kernel_intersection_bounded, lnd_certify, span_equal, verify_nilpotency,
                               well_defined)
from krcert.exact import GaussianRational
from krcert.poly import RingSpec

A_SPEC = RingSpec.parse("x, y, z, t")
a_polys = laurent_polys(A_SPEC, max_terms=3, max_exp=2)


def test_builtin_derivations_are_well_defined_lnds(A):
    d1, d2 = kr_derivations(A)
    for D in (d1, d2):
        assert well_defined(D)
        cert = lnd_certify(D)
        assert isinstance(cert, NilpotencyCertificate) and verify_nilpotency(D, cert)
    assert lnd_certify(d1).indices == {"x": 1, "y": 3, "z": 2, "t": 1}


def test_ill_defined_and_non_nilpotent(A):
    assert not well_defined(Derivation(A, {"y": 1}))
    euler = Derivation(Derivation(A, {}).ring.adjoin("s"), {"s": "s"})
    assert isinstance(lnd_certify(euler, cap=5), Inconclusive)


@given(a_polys, a_polys)
def test_leibniz_rule_modulo_relations(A, a, b):
    d1, d2 = kr_derivations(A)
    for D in (d1, d2):
        assert A.equal(D.apply(a * b), D.apply(a) * b + a * D.apply(b))


def _at(q, value, ring):
    """Specialize the flow parameter ``s`` of an element of ``ring[s]`` to ``value``."""
    out = ring.spec.zero()
    for k, c in q.coefficient_in("s").items():
        out = out + c.to_ring(ring.spec) * GaussianRational(value) ** k
    return ring.normal_form(out)


@given(a_polys, st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
def test_exponential_is_a_one_parameter_group(A, p, s1, s2):
    d1, _ = kr_derivations(A)
    E = exponential(d1, lnd_certify(d1), "s")

    def flow(value, q):
        return _at(E(q), value, A)

    assert A.equal(flow(s1, flow(s2, p)), flow(s1 + s2, p))
    assert A.equal(flow(0, p), p)


def test_exponential_of_d1_on_generators(A):
    d1, _ = kr_derivations(A)
    E = exponential(d1, lnd_certify(d1), "s")
    T = E.target
    assert T.equal(E.images["z"], T("z + x^2*s"))
    assert T.equal(E.images["y"], T("y - 2*z*s - x^2*s^2"))


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 5, 6])
def test_joint_kernel_is_polynomials_in_x(A, degree):
    d1, d2 = kr_derivations(A)
    start = time.perf_counter()
    basis = kernel_intersection_bounded([d1, d2], degree)
    assert time.perf_counter() - start < 60
    assert span_equal(basis, [A.var("x") ** j for j in range(degree + 1)])


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 5, 6])
def test_joint_kernel_dimension_matches_sympy(A, degree):
    d1, d2 = kr_derivations(A)
    assert len(kernel_intersection_bounded([d1, d2], degree)) == sympy_joint_kernel_dimension(degree) == degree + 1


def test_single_kernel_in_low_degree(A):
    d1, _ = kr_derivations(A)
    basis = kernel_intersection_bounded([d1], 2)
    assert span_equal(basis, [A(p) for p in ("1", "x", "t", "x^2", "x*t", "t^2")])
