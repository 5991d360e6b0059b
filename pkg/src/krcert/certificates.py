"""Replayable certificates.

A certificate is a JSON-ready dict with a ``kind`` and everything needed to redo the
check from scratch: ring descriptions and polynomials as text.
"""

from __future__ import annotations

import itertools
from typing import Callable

from .derivation import (Derivation, NilpotencyCertificate, kernel_intersection_bounded, lnd_certify,
                         span_equal, verify_nilpotency, well_defined)
from .geometry import RingFraction, RingMorphism, check_equivariance, check_inverse_pair, check_morphism
from .ideal import PresentedRing, irreducible_linear_in
from .poly import pole_order, substitute


def ring_desc(R: PresentedRing) -> dict:
    return R.describe()


def load_ring(desc: dict) -> PresentedRing:
    return PresentedRing.from_description(desc)


def morphism_desc(M: RingMorphism) -> dict:
    return {"source": ring_desc(M.source), "target": ring_desc(M.target), **M.describe()}


def load_morphism(desc: dict) -> RingMorphism:
    src, tgt = load_ring(desc["source"]), load_ring(desc["target"])
    return RingMorphism(src, tgt, desc["images"], desc.get("unit_witnesses") or None)


def _derivation(ring: PresentedRing, images: dict) -> Derivation:
    return Derivation(ring, images)


def _frac(ring: PresentedRing, d: dict) -> RingFraction:
    return RingFraction(ring, ring(d["numerator"]), ring(d["denominator"]))


# -- builders -----------------------------------------------------------------------------

def substitution_cert(source: PresentedRing, target: PresentedRing, poly, images: dict, expected) -> dict:
    return {
        "kind": "substitution",
        "source": ring_desc(source),
        "target": ring_desc(target),
        "polynomial": str(poly),
        "images": {k: str(v) for k, v in images.items()},
        "expected": str(expected),
    }


def morphism_cert(M: RingMorphism) -> dict:
    return {"kind": "morphism", "morphism": morphism_desc(M)}


def lnd_cert(D: Derivation, cert: NilpotencyCertificate) -> dict:
    return {
        "kind": "lnd",
        "ring": ring_desc(D.ring),
        "images": D.describe(),
        "indices": dict(cert.indices),
        "cap": cert.cap,
    }


def kernel_cert(derivations, degree: int, basis) -> dict:
    return {
        "kind": "kernel_bounded",
        "ring": ring_desc(derivations[0].ring),
        "derivations": [D.describe() for D in derivations],
        "degree": degree,
        "basis": [str(p) for p in basis],
    }


def equivariance_cert(M: RingMorphism, d_src: Derivation, d_tgt: Derivation) -> dict:
    return {
        "kind": "equivariance",
        "morphism": morphism_desc(M),
        "source_derivation": d_src.describe(),
        "target_derivation": d_tgt.describe(),
    }


def invariance_cert(ring: PresentedRing, twist: RingMorphism, elements) -> dict:
    return {
        "kind": "twist_invariance",
        "ring": ring_desc(ring),
        "twist": {k: str(v) for k, v in twist.images.items()},
        "elements": [str(e) for e in elements],
    }


def antisymmetry_cert(ring: PresentedRing, sigma: RingMorphism, value: RingFraction) -> dict:
    return {
        "kind": "antisymmetry",
        "ring": ring_desc(ring),
        "sigma": {k: str(v) for k, v in sigma.images.items()},
        "value": value.describe(),
    }


def splitting_cert(ring: PresentedRing, sigma: RingMorphism, cocycle: RingFraction, reps, excluded) -> dict:
    return {
        "kind": "splitting",
        "ring": ring_desc(ring),
        "sigma": {k: str(v) for k, v in sigma.images.items()},
        "cocycle": cocycle.describe(),
        "representations": [r.describe() for r in reps],
        "excluded_locus": [str(g) for g in excluded],
    }


def inverse_pair_cert(forward: RingMorphism, inverse: RingMorphism, fixed) -> dict:
    return {
        "kind": "inverse_pair",
        "forward": morphism_desc(forward),
        "inverse": morphism_desc(inverse),
        "fixed": list(fixed),
    }


def conjugate_cert(D: Derivation, forward: RingMorphism, inverse: RingMorphism, delta: Derivation,
                   cert: NilpotencyCertificate, nonzero: str, killed) -> dict:
    return {
        "kind": "conjugate",
        "derivation": D.describe(),
        "forward": morphism_desc(forward),
        "inverse": morphism_desc(inverse),
        "result": delta.describe(),
        "indices": dict(cert.indices),
        "cap": cert.cap,
        "nonzero": nonzero,
        "killed": list(killed),
    }


def cleared_cert(delta: Derivation, unit: str, k: int, D: Derivation, cert: NilpotencyCertificate,
                 nonzero: str) -> dict:
    return {
        "kind": "cleared",
        "source": ring_desc(delta.ring),
        "delta": delta.describe(),
        "unit": unit,
        "k": k,
        "target": ring_desc(D.ring),
        "result": D.describe(),
        "indices": dict(cert.indices),
        "cap": cert.cap,
        "nonzero": nonzero,
    }


def pole_cert(ring: PresentedRing, c1: RingFraction, c2: RingFraction, var: str, order: int) -> dict:
    return {
        "kind": "pole_order",
        "ring": ring_desc(ring),
        "first": c1.describe(),
        "second": c2.describe(),
        "var": var,
        "order": order,
    }


def irreducible_cert(ring: PresentedRing, poly, var: str) -> dict:
    return {"kind": "irreducible_linear", "ring": ring_desc(ring), "polynomial": str(poly), "var": var}


def nonzero_cert(ring: PresentedRing, element) -> dict:
    return {"kind": "nonzero", "ring": ring_desc(ring), "element": str(element)}


def kernel_member_cert(D: Derivation, elements) -> dict:
    return {"kind": "kernel_member", "ring": ring_desc(D.ring), "images": D.describe(),
            "elements": [str(e) for e in elements]}


def involution_cert(ring: PresentedRing, sigma: RingMorphism, invariants=()) -> dict:
    return {"kind": "involution", "ring": ring_desc(ring), "sigma": {k: str(v) for k, v in sigma.images.items()},
            "invariants": [str(g) for g in invariants]}


def implication_cert(premises, statement: str) -> dict:
    return {"kind": "implication", "premises": list(premises), "statement": statement}


# -- replay -------------------------------------------------------------------------------

def _replay_substitution(c: dict) -> bool:
    src, tgt = load_ring(c["source"]), load_ring(c["target"])
    images = {k: tgt(v) for k, v in c["images"].items()}
    got = substitute(src(c["polynomial"]), images, tgt.spec, reduce=tgt.normal_form)
    return tgt.equal(got, tgt(c["expected"]))


def _replay_morphism(c: dict) -> bool:
    return bool(check_morphism(load_morphism(c["morphism"])))


def _certify_indices(D: Derivation, indices: dict, cap: int) -> bool:
    return well_defined(D) and verify_nilpotency(D, NilpotencyCertificate(dict(indices), cap))


def _replay_lnd(c: dict) -> bool:
    R = load_ring(c["ring"])
    return _certify_indices(_derivation(R, c["images"]), c["indices"], c["cap"])


def _replay_kernel(c: dict) -> bool:
    R = load_ring(c["ring"])
    Ds = [_derivation(R, imgs) for imgs in c["derivations"]]
    basis = kernel_intersection_bounded(Ds, c["degree"])
    return span_equal(basis, [R(p) for p in c["basis"]])


def _replay_equivariance(c: dict) -> bool:
    M = load_morphism(c["morphism"])
    ds = _derivation(M.source, c["source_derivation"])
    dt = _derivation(M.target, c["target_derivation"])
    cs, ct = lnd_certify(ds), lnd_certify(dt)
    if not isinstance(cs, NilpotencyCertificate) or not isinstance(ct, NilpotencyCertificate):
        return False
    return bool(check_equivariance(M, ds, dt, cs, ct))


def _replay_invariance(c: dict) -> bool:
    R = load_ring(c["ring"])
    tw = RingMorphism(R, R, c["twist"])
    return all(R.equal(tw(R(e)), R(e)) for e in c["elements"])


def _replay_antisymmetry(c: dict) -> bool:
    R = load_ring(c["ring"])
    sigma = RingMorphism(R, R, c["sigma"])
    v = _frac(R, c["value"])
    return (v.mapped(sigma) + v).equals(RingFraction(R, 0))


def _replay_involution(c: dict) -> bool:
    R = load_ring(c["ring"])
    sigma = RingMorphism(R, R, c["sigma"])
    if not check_morphism(sigma):
        return False
    if any(sigma(sigma.images[n]) != R.var(n) for n in R.names):
        return False
    if all(sigma.images[n] == R.var(n) for n in R.names):
        return False
    return all(R.equal(sigma(R(g)), R(g)) for g in c["invariants"])


def _replay_splitting(c: dict) -> bool:
    R = load_ring(c["ring"])
    sigma = RingMorphism(R, R, c["sigma"])
    coc = _frac(R, c["cocycle"])
    reps = [_frac(R, r) for r in c["representations"]]
    if not reps:
        return False
    if not all((r.mapped(sigma) - r).equals(coc) for r in reps):
        return False
    if not all(a.equals(b) for a, b in itertools.combinations(reps, 2)):
        return False
    gens = [R(g) for g in c["excluded_locus"]]
    return R.contains_one(gens + [sigma(g) for g in gens])


def _replay_inverse_pair(c: dict) -> bool:
    F, G = load_morphism(c["forward"]), load_morphism(c["inverse"])
    if not (check_morphism(F) and check_morphism(G) and check_inverse_pair(F, G)):
        return False
    return all(F.images[n] == F.target.var(n) and G.images[n] == G.target.var(n) for n in c["fixed"])


def _replay_conjugate(c: dict) -> bool:
    F, G = load_morphism(c["forward"]), load_morphism(c["inverse"])
    if not (check_morphism(F) and check_morphism(G) and check_inverse_pair(F, G)):
        return False
    D = _derivation(F.target, c["derivation"])
    delta = _derivation(F.source, c["result"])
    for g in F.source.names:
        if not F.source.equal(G(D.apply(F.images[g])), delta.images[g]):
            return False
    if delta.images[c["nonzero"]].is_zero():
        return False
    if any(not delta.images[g].is_zero() for g in c["killed"]):
        return False
    return _certify_indices(delta, c["indices"], c["cap"])


def _replay_cleared(c: dict) -> bool:
    S, T = load_ring(c["source"]), load_ring(c["target"])
    delta = _derivation(S, c["delta"])
    D = _derivation(T, c["result"])
    unit = c["unit"]
    k = max((pole_order(p, unit) for p in delta.images.values()), default=0)
    if k != c["k"]:
        return False
    f = S.var(unit) ** k
    for g in S.names:
        if not S.equal(delta.images[g] * f, D.images[g].to_ring(S.spec)):
            return False
    if D.images[c["nonzero"]].is_zero():
        return False
    return _certify_indices(D, c["indices"], c["cap"])


def _replay_pole(c: dict) -> bool:
    R = load_ring(c["ring"])
    loc_spec = R.spec.localize(c["var"])
    loc = PresentedRing(loc_spec, [r.to_ring(loc_spec) for r in R.relations])
    a, b = _frac(R, c["first"]), _frac(R, c["second"])
    diff = loc.normal_form(a.as_laurent(loc) - b.as_laurent(loc))
    order = pole_order(diff, c["var"])
    return order == c["order"] and order > 0


def _replay_irreducible(c: dict) -> bool:
    R = load_ring(c["ring"])
    return irreducible_linear_in(R(c["polynomial"]), c["var"]).irreducible


def _replay_nonzero(c: dict) -> bool:
    R = load_ring(c["ring"])
    return not R.is_zero(R(c["element"]))


def _replay_kernel_member(c: dict) -> bool:
    R = load_ring(c["ring"])
    D = _derivation(R, c["images"])
    return all(D.apply(R(e)).is_zero() for e in c["elements"])


def _replay_check_line(c: dict) -> bool:
    from .checkfile import run_check_file  # deferred: checkfile imports this module via report

    report = run_check_file("\n".join([*c["definitions"], c["check"]]))
    return len(report.claims) == 1 and report.claims[0].status == "verified"


REPLAYERS: dict[str, Callable[[dict], bool]] = {
    "substitution": _replay_substitution,
    "morphism": _replay_morphism,
    "lnd": _replay_lnd,
    "kernel_bounded": _replay_kernel,
    "equivariance": _replay_equivariance,
    "twist_invariance": _replay_invariance,
    "antisymmetry": _replay_antisymmetry,
    "involution": _replay_involution,
    "splitting": _replay_splitting,
    "inverse_pair": _replay_inverse_pair,
    "conjugate": _replay_conjugate,
    "cleared": _replay_cleared,
    "pole_order": _replay_pole,
    "irreducible_linear": _replay_irreducible,
    "nonzero": _replay_nonzero,
    "kernel_member": _replay_kernel_member,
    "check_line": _replay_check_line,
}


def replay(cert: dict, verified_claims: set | None = None) -> bool:
    """Redo a certificate's check from its serialized data."""
    kind = cert.get("kind")
    if kind == "implication":
        return verified_claims is not None and all(p in verified_claims for p in cert["premises"])
    fn = REPLAYERS.get(kind)
    if fn is None:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return fn(cert)
