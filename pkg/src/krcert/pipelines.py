"""End-to-end certification pipelines: kr-cylinder, danielewski, remarks."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from time import perf_counter
from typing import Callable

from . import certificates as C
from .data import (COORDINATE_CHANGE, COORDINATE_CHANGE_INVERSE, KR_EQUATION, KR_REWRITTEN, PHI1,
                   CylinderData, danielewski_data, default_ansatz, kr_data, kr_rings, kr_derivations, ring)
from .derivation import (DEFAULT_CAP, Derivation, NilpotencyCertificate, kernel_intersection_bounded,
                         kernel_member, lnd_certify, span_equal, well_defined)
from .geometry import (Cocycle, NoSolutionWithinAnsatz, RingFraction, RingMorphism,
                       check_deck_identity, check_equivariance, check_inverse_pair, check_morphism,
                       is_coboundary_on_base, split_cocycle)
from .ideal import PresentedRing, irreducible_linear_in
from .poly import substitute
from .report import INCONCLUSIVE, REFUTED, VERIFIED, ClaimResult, Report
from .theta import DescentError, build_theta, clear_denominators, conjugate_by, conjugate_derivation

PIPELINES = ("kr-cylinder", "danielewski", "remarks", "all")
CORRUPTIONS = ("shift", "action", "phi", "parity", "cocycle")

BOUNDED_LABEL = "bounded-degree evidence (D={})"


@dataclass(frozen=True)
class Config:
    kernel_degree: int = 6
    ansatz_degree: int = 8
    lnd_cap: int = DEFAULT_CAP
    negative_controls: bool = False
    corrupt: str | None = None  # test hook: run the main claims on a corrupted built-in

    def __post_init__(self):
        if self.corrupt is not None and self.corrupt not in CORRUPTIONS:
            raise ValueError(f"unknown corruption {self.corrupt!r}; expected one of {CORRUPTIONS}")
        for name in ("kernel_degree", "ansatz_degree", "lnd_cap"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


class Refuted(Exception):
    def __init__(self, message: str, detail: dict | None = None):
        super().__init__(message)
        self.detail = detail or {}


class Undecided(Exception):
    def __init__(self, message: str, detail: dict | None = None):
        super().__init__(message)
        self.detail = detail or {}


class MissingPremise(Undecided):
    pass


def _require(checks: dict) -> None:
    bad = {k: list(map(str, v.failures)) for k, v in checks.items() if not v}
    if bad:
        raise Refuted("failed: " + ", ".join(bad), {"failures": bad})


def _lnd(D: Derivation, cap: int) -> NilpotencyCertificate:
    if not well_defined(D):
        raise Refuted(f"{D.name or 'derivation'} is not well defined",
                      {"relation_images": [str(D.apply(r)) for r in D.ring.relations]})
    cert = lnd_certify(D, cap)
    if not isinstance(cert, NilpotencyCertificate):
        raise Undecided(f"{D.name or 'derivation'}: nilpotency not reached within cap", cert.as_dict())
    return cert


class _Runner:
    def __init__(self, pipeline: str, config: Config):
        self.pipeline = pipeline
        self.config = config
        self.claims: list[ClaimResult] = []
        self.ctx: dict = {}

    def need(self, key: str):
        if key not in self.ctx:
            raise MissingPremise(f"premise {key!r} unavailable (an earlier claim failed)")
        return self.ctx[key]

    def claim(self, cid: str, description: str, where: str, fn: Callable[[], dict]) -> ClaimResult:
        t0 = perf_counter()
        try:
            detail = fn()
            status = VERIFIED
        except Refuted as exc:
            status, detail = REFUTED, {"error": str(exc), **exc.detail}
        except Undecided as exc:
            status, detail = INCONCLUSIVE, {"error": str(exc), **exc.detail}
        except Exception as exc:  # any failing check is evidence against the claim
            status, detail = REFUTED, {"error": f"{type(exc).__name__}: {exc}"}
        ms = round((perf_counter() - t0) * 1000, 3)
        result = ClaimResult(cid, description, status, where, detail, ms)
        self.claims.append(result)
        return result

    def report(self) -> Report:
        return Report(self.pipeline, self.claims)


# -- shared claim bodies ----------------------------------------------------------------

def _charts_claim(run: _Runner, build: Callable[[], CylinderData]) -> dict:
    data = build()
    certs, checks = [], {}
    cap = run.config.lnd_cap
    cover_ring = data.base_cover.total
    checks["base cover involution"] = data.base_cover.check()
    certs.append(C.involution_cert(cover_ring, data.base_cover.sigma, data.base_cover.base_generators))
    for b in (data.first, data.second):
        checks[f"{b.name} cover involution"] = b.cover.check()
        certs.append(C.involution_cert(b.cover.total, b.cover.sigma, b.cover.base_generators))
        checks[f"phi[{b.name}]"] = check_morphism(b.phi_base)
        checks[f"phi~[{b.name}]"] = check_morphism(b.chart.phi)
        certs += [C.morphism_cert(b.phi_base), C.morphism_cert(b.chart.phi)]
        checks[f"fiber coordinate of {b.name}"] = b.chart.check_reps()
        ca = _lnd(b.action, cap)
        ct = _lnd(b.translation, cap)
        checks[f"equivariance of phi[{b.name}]"] = check_equivariance(b.phi_base, b.action, b.translation, ca, ct)
        certs.append(C.lnd_cert(b.action, ca))
        certs.append(C.equivariance_cert(b.phi_base, b.action, b.translation))
    _require(checks)
    run.ctx["data"] = data
    return {
        "summary": "trivializations are ring maps equivariant for translation in the chart coordinate",
        "trivializations": {b.name: b.phi_base.describe()["images"] for b in (data.first, data.second)},
        "actions": {b.name: b.action.describe() for b in (data.first, data.second)},
        "certificates": certs,
    }


def _deck_claim(run: _Runner, note: str = "") -> dict:
    data = run.need("data")
    certs, checks, shifts = [], {}, {}
    for b in (data.first, data.second):
        checks[b.name] = check_deck_identity(b.phi_base, b.chart)
        loc = b.chart.localized()
        tw = b.chart.twist(loc)
        certs.append(C.invariance_cert(loc, tw, [p.to_ring(loc.spec) for p in b.phi_base.images.values()]))
        shifts[b.name] = str(b.chart.shift.value)
    _require(checks)
    out = {"summary": "phi(v + c, x, sigma(base)) = phi(v, x, base) componentwise", "shifts": shifts,
           "certificates": certs}
    if note:
        out["note"] = note
    return out


def _antisymmetry_claim(run: _Runner, cocycles: list) -> dict:
    certs = []
    for c in cocycles:
        if not c.antisymmetric():
            raise Refuted(f"cocycle {c.name} is not antisymmetric")
        certs.append(C.antisymmetry_cert(c.cover.total, c.cover.sigma, c.value))
    return {"summary": "sigma(c) = -c for every transition function",
            "cocycles": {c.name: str(c.value) for c in cocycles}, "certificates": certs}


def _find_splitting(c: Cocycle, bundle, max_degree: int):
    last = None
    for deg in range(max_degree + 1):
        last = split_cocycle(c, bundle.chart, default_ansatz(bundle, deg))
        if not isinstance(last, NoSolutionWithinAnsatz):
            return deg, last
    return max_degree, last


def _splitting_claim(run: _Runner) -> dict:
    data = run.need("data")
    out, certs = {}, []
    pairs = (("on_second", data.cocycle_first, data.second), ("on_first", data.cocycle_second, data.first))
    for key, c, b in pairs:
        deg, w = _find_splitting(c, b, run.config.ansatz_degree)
        if isinstance(w, NoSolutionWithinAnsatz):
            raise Undecided(f"no splitting of {c.name} on {b.name} within ansatz degree {deg}",
                            {"unknowns": w.unknowns})
        check = w.verify()
        _require({f"{c.name} on {b.name}": check})
        run.ctx[key] = w
        cover = b.cover
        certs.append(C.splitting_cert(cover.total, cover.sigma, c.value.to_ring(cover.total),
                                      w.representations(), w.excluded_locus))
        out[f"{c.name} on {b.name}"] = {"ansatz_degree": deg, **w.describe()}
    return {"summary": "explicit splittings sigma(h) - h = c with regularity coverage", "splittings": out,
            "certificates": certs}


def _theta_claim(run: _Runner, corrupt_parity: bool = False) -> dict:
    data = run.need("data")
    h2, h1 = run.need("on_second"), run.need("on_first")
    if corrupt_parity:
        h2 = _break_parity(h2, data)
    try:
        th = build_theta(data, h2, h1)
    except DescentError as exc:
        raise Refuted(f"descent failed: {exc}", {"offending": str(exc.expression)}) from None
    _require(th.checks)
    run.ctx["theta"] = th
    return {
        "summary": f"Theta*: {th.forward.source.name} -> {th.forward.target.name} built on the cover, "
                   f"descended, inverse verified, fixes {', '.join(data.invariant_vars)}",
        "theta": th.forward.describe()["images"],
        "theta_inverse": th.inverse.describe()["images"],
        "certificates": [C.inverse_pair_cert(th.forward, th.inverse, data.invariant_vars)],
    }


def _break_parity(w, data: CylinderData):
    chart = w.chart.chart
    odd = next(n for n in chart.names if n in data.base_cover.total.names and n != w.chart.gluing_var)
    return dataclasses.replace(w, chart_solution=w.chart_solution + chart.var(odd))


def _cylinder_lnd_claim(run: _Runner) -> dict:
    data = run.need("data")
    th = run.need("theta")
    d = Derivation(th.forward.target, data.cylinder_derivation, name="d")
    cert = _lnd(d, run.config.lnd_cap)
    if d.images["x"].is_zero():
        raise Refuted("d(x) = 0")
    run.ctx["d"] = d
    run.ctx["d_cert"] = cert
    return {"summary": f"d is a locally nilpotent derivation of {d.ring.name} with d(x) != 0",
            "derivation": d.describe(), "indices": dict(cert.indices),
            "certificates": [C.lnd_cert(d, cert), C.nonzero_cert(d.ring, d.images["x"])]}


def _conjugate_claim(run: _Runner, killed: tuple) -> dict:
    th = run.need("theta")
    d = run.need("d")
    res = conjugate_derivation(d, th.forward, th.inverse, run.config.lnd_cap, "x", killed)
    if isinstance(res.certificate, NilpotencyCertificate):
        _require(res.checks)
    else:
        raise Undecided("conjugate derivation: nilpotency not reached within cap", res.certificate.as_dict())
    run.ctx["delta"] = res.derivation
    return {"summary": "delta = (Theta*)^-1 d Theta* is locally nilpotent with delta(x) != 0"
                       + (", delta(t) = 0" if killed else ""),
            "derivation": res.derivation.describe(), "indices": dict(res.certificate.indices),
            "certificates": [C.conjugate_cert(d, th.forward, th.inverse, res.derivation, res.certificate,
                                              "x", killed)]}


# -- kr-cylinder -------------------------------------------------------------------------

def _kr_build(config: Config) -> Callable[[], CylinderData]:
    def build():
        if config.corrupt == "shift":
            return kr_data(shift1=("mu^3", "x"))
        if config.corrupt == "action":
            return kr_data(action1={"y": "x^2", "z": "2*y"})
        if config.corrupt == "phi":
            return kr_data(phi1={**PHI1, "y": "mu^3 + x*v^2"})
        return kr_data()

    return build


def _coordinate_change(A: PresentedRing, A2: PresentedRing, w: str | None = None):
    if w:
        A, A2 = A.adjoin(w, name=f"{A.name}[{w}]"), A2.adjoin(w, name=f"{A2.name}[{w}]")
    fwd = dict(COORDINATE_CHANGE)
    inv = dict(COORDINATE_CHANGE_INVERSE)
    if w:
        fwd[w] = inv[w] = w
    theta = RingMorphism(A, A2, fwd, name="coordinate change")
    back = RingMorphism(A2, A, inv, name="inverse coordinate change")
    return theta, back


def kr_cylinder(config: Config = Config(), run: _Runner | None = None) -> Report:
    run = run or _Runner("kr-cylinder", config)
    rings = kr_rings()
    A, A2 = rings["A"], rings["A'"]
    D = config.kernel_degree
    cap = config.lnd_cap

    def c1():
        P = ring("x, y, z, t", name="Q(i)[x,y,z,t]")
        images = {k: P(v) for k, v in COORDINATE_CHANGE.items()}
        got = substitute(P(KR_EQUATION), images, P.spec)
        if got != P(KR_REWRITTEN):
            raise Refuted(f"coordinate change gives {got}")
        theta, back = _coordinate_change(A, A2)
        _require({"morphism": check_morphism(theta), "inverse": check_morphism(back),
                  "inverse pair": check_inverse_pair(theta, back)})
        return {"summary": f"{KR_EQUATION} -> {got}",
                "certificates": [C.substitution_cert(P, P, P(KR_EQUATION), images, got),
                                 C.inverse_pair_cert(theta, back, ["t"])]}

    def c2():
        d1, d2 = kr_derivations(A)
        e1, e2 = _lnd(d1, cap), _lnd(d2, cap)
        x = A.var("x")
        if not (kernel_member(d1, x) and kernel_member(d2, x)):
            raise Refuted("x is not in both kernels")
        basis = kernel_intersection_bounded([d1, d2], D)
        expected = [x ** k for k in range(D + 1)]
        if not span_equal(basis, expected):
            raise Refuted("bounded kernel differs from span{1, x, ..., x^D}",
                          {"basis": [str(p) for p in basis]})
        run.ctx["A_derivations"] = (d1, d2)
        return {"summary": f"Q(i)[x] lies in both kernels; joint kernel in degree <= {D} is span{{1, x, ..., x^{D}}}",
                "label": BOUNDED_LABEL.format(D),
                "derivations": {"d1": d1.describe(), "d2": d2.describe()},
                "basis": [str(p) for p in basis],
                "certificates": [C.lnd_cert(d1, e1), C.lnd_cert(d2, e2), C.kernel_member_cert(d1, [x]),
                                 C.kernel_member_cert(d2, [x]), C.kernel_cert([d1, d2], D, basis)]}

    def c5():
        data = run.need("data")
        cocycles = [data.cocycle_first, data.cocycle_second]
        if config.corrupt == "cocycle":
            bad = RingFraction(data.base_cover.total, "2*mu^3 + mu^2*x", "x")
            cocycles[0] = Cocycle(data.base_cover, bad, name="perturbed c[X1]")
        return _antisymmetry_claim(run, cocycles)

    def c10():
        delta = run.need("delta")
        A2w = A2.adjoin("w", name="A'[w]")
        cl = clear_denominators(delta, A2w, "t", cap, "x")
        if not isinstance(cl.certificate, NilpotencyCertificate):
            raise Undecided("t^k delta: nilpotency not reached within cap", cl.certificate.as_dict())
        _require(cl.checks)
        theta, back = _coordinate_change(A, A2, "w")
        dA = conjugate_by(cl.derivation, theta, back, name="extension on A[w]")
        eA = _lnd(dA, cap)
        if dA.images["x"].is_zero() or not dA.images["t"].is_zero():
            raise Refuted("pulled-back derivation must move x and kill t")
        run.ctx["partial"] = dA
        return {"summary": f"k = {cl.k}; t^{cl.k} delta extends to an LND of A'[w] and, through the coordinate "
                           f"change, of A[w] with image of x = {dA.images['x']}",
                "k": cl.k,
                "derivation_on_A'[w]": cl.derivation.describe(),
                "derivation_on_A[w]": dA.describe(),
                "certificates": [C.cleared_cert(delta, "t", cl.k, cl.derivation, cl.certificate, "x"),
                                 C.conjugate_cert(cl.derivation, theta, back, dA, eA, "x", ["t"])]}

    def c11():
        dA = run.need("partial")
        d1, d2 = run.need("A_derivations")
        cert = irreducible_linear_in(A2.relations[0], "z")
        if not cert.irreducible:
            raise Undecided("relation not certified irreducible", cert.as_dict())
        Aw = dA.ring
        ext = [Derivation(Aw, d.images, name=d.name) for d in (d1, d2)] + [Derivation(Aw, {"w": 1}, name="d/dw")]
        for e in ext:
            _lnd(e, cap)
        deg = min(D, 4)
        basis = kernel_intersection_bounded(ext + [dA], deg)
        if not span_equal(basis, [Aw.spec.one()]):
            raise Refuted("joint kernel with the new derivation is larger than the constants",
                          {"basis": [str(p) for p in basis]})
        return {
            "summary": "A' (so A and A[w]) is a domain; for f in Q(i)[x], f'(x) * partial(x) = 0 forces f' = 0, "
                       "so ML(X x A^1) = Q(i), contingent on kr-2",
            "label": f"contingent on {BOUNDED_LABEL.format(D)} from kr-2",
            "argument": [
                "ML(X x A^1) lies in Ker(d1) ∩ Ker(d2) ∩ Ker(d/dw) on A[w], which is Q(i)[x] (kr-2, bounded evidence)",
                "A[w] is a domain (irreducible relation, kr-1 isomorphism)",
                "partial(x) != 0 (kr-10), so f(x) in Ker(partial) has f'(x) = 0",
            ],
            "irreducibility": cert.as_dict(),
            "joint_kernel_degree": deg,
            "certificates": [C.irreducible_cert(ring("x, y, z, t"), A2.relations[0], "z"),
                             C.nonzero_cert(Aw, dA.images["x"]),
                             C.kernel_cert(ext + [dA], deg, basis),
                             C.implication_cert(["kr-1", "kr-2", "kr-10"],
                                                "ML(X x A^1) = Q(i) (contingent on bounded-degree evidence)")],
        }

    transcription = "the first deck isomorphism acts on the chart coordinates (v, x, mu)"
    run.claim("kr-1", "coordinate change rewrites the cubic threefold equation",
              "cylinder argument: coordinate change", c1)
    run.claim("kr-2", "d1, d2 are LNDs of A and Q(i)[x] is their joint kernel in bounded degree",
              "introduction: derivations annihilating the defining equation", c2)
    run.claim("kr-3", "phi1, phi2 are valid equivariant trivializations", "cylinder argument: trivializations",
              lambda: _charts_claim(run, _kr_build(config)))
    run.claim("kr-4", "deck identities with shifts 2mu^3/x and -mu^-3/x + 2mu^3/x^2",
              "cylinder argument: equivariant isomorphisms of the equivalence relation",
              lambda: _deck_claim(run, transcription))
    run.claim("kr-5", "both transition functions are antisymmetric", "cylinder argument: cocycle data", c5)
    run.claim("kr-6", "each transition function splits on the other bundle's cover",
              "cylinder argument: triviality of the pulled-back bundles", lambda: _splitting_claim(run))
    run.claim("kr-7", "Theta is an isomorphism X1 x A^1 -> X2 x A^1 over Q(i)[x, t^±1]",
              "cylinder argument: the induced isomorphism",
              lambda: _theta_claim(run, corrupt_parity=config.corrupt == "parity"))
    run.claim("kr-8", "d = 2y d/dx + z d/dy is an LND of B1[w] with d(x) != 0",
              "cylinder argument: derivation on the first cylinder", lambda: _cylinder_lnd_claim(run))
    run.claim("kr-9", "delta is an LND of B2[w] with delta(x) != 0 and delta(t) = 0",
              "cylinder argument: conjugated derivation", lambda: _conjugate_claim(run, ("t",)))
    run.claim("kr-10", "t^k delta extends to an LND of A[w] moving x", "cylinder argument: clearing denominators", c10)
    run.claim("kr-11", "conclusion: ML(X x A^1) = Q(i)",
              "main result: invariants of X x A^1", c11)
    if config.negative_controls:
        _kr_negative_controls(run)
    return run.report()


def _kr_negative_controls(run: _Runner) -> None:
    cap = run.config.lnd_cap

    def wrong_shift():
        data = kr_data()
        b = data.first
        loc = b.chart.localized()
        _require({"deck identity": check_deck_identity(b.phi_base, b.chart, loc("mu^3*x^-1"))})
        return {"certificates": []}

    def wrong_action():
        data = kr_data()
        b = data.first
        wrong = Derivation(b.base, {"y": "x^2", "z": "2*y"}, name="wrong action")
        cw = _lnd(wrong, cap)
        ct = _lnd(b.translation, cap)
        _require({"equivariance": check_equivariance(b.phi_base, wrong, b.translation, cw, ct)})
        return {"certificates": []}

    def corrupted_phi():
        data = kr_data()
        b = data.first
        bad = RingMorphism(b.base, b.chart.chart, {**PHI1, "y": "mu^3 + x*v^2"}, {"t": "mu^-2"})
        _require({"morphism": check_morphism(bad)})
        return {"certificates": []}

    def broken_parity():
        sub = _Runner("nc", run.config)
        _charts_claim(sub, kr_data)
        _splitting_claim(sub)
        return _theta_claim(sub, corrupt_parity=True)

    def perturbed_cocycle():
        data = kr_data()
        bad = RingFraction(data.base_cover.total, "2*mu^3 + mu^2*x", "x")
        return _antisymmetry_claim(run, [Cocycle(data.base_cover, bad, name="perturbed")])

    run.claim("nc-kr-shift", "negative control: deck identity with shift mu^3/x", "negative control", wrong_shift)
    run.claim("nc-kr-action", "negative control: phi1 against the action x^2 d/dy + 2y d/dz", "negative control",
              wrong_action)
    run.claim("nc-kr-phi", "negative control: phi1 with y-image mu^3 + x v^2", "negative control", corrupted_phi)
    run.claim("nc-kr-parity", "negative control: splitting shifted by mu breaks sigma-parity", "negative control",
              broken_parity)
    run.claim("nc-kr-cocycle", "negative control: perturbed cocycle (2mu^3 + mu^2 x)/x", "negative control",
              perturbed_cocycle)


# -- danielewski -----------------------------------------------------------------------

def danielewski(config: Config = Config(), run: _Runner | None = None) -> Report:
    run = run or _Runner("danielewski", config)
    cap = config.lnd_cap
    D = config.kernel_degree

    def build():
        return danielewski_data(2 if config.corrupt == "shift" else None)

    def c8():
        delta = run.need("delta")
        data = run.need("data")
        S2w = delta.ring
        rel = data.second.base.relations[0]
        cert = irreducible_linear_in(rel, "z")
        if not cert.irreducible:
            raise Undecided("relation not certified irreducible", cert.as_dict())
        ext = [Derivation(S2w, data.second.action.images, name="x^2 d/dy + 2y d/dz"),
               Derivation(S2w, {"w": 1}, name="d/dw")]
        for e in ext:
            _lnd(e, cap)
        deg = min(D, 4)
        basis = kernel_intersection_bounded(ext + [delta], deg)
        if not span_equal(basis, [S2w.spec.one()]):
            raise Refuted("joint kernel larger than constants", {"basis": [str(p) for p in basis]})
        return {"summary": "S2[w] is a domain and delta(x) != 0, so no nonconstant f(x) is invariant: "
                           "ML(S2 x A^1) = Q(i), contingent on the cited ML(S2) = Q(i)[x]",
                "label": f"contingent on a cited theorem; joint kernel is the constants in degree <= {deg}",
                "irreducibility": cert.as_dict(),
                "certificates": [C.irreducible_cert(ring("x, y, z"), rel, "z"),
                                 C.nonzero_cert(S2w, delta.images["x"]),
                                 C.kernel_cert(ext + [delta], deg, basis),
                                 C.implication_cert(["dan-5", "dan-7"], "ML(S2 x A^1) = Q(i) (contingent)")]}

    run.claim("dan-1", "S1, S2 charts are valid equivariant trivializations", "warm-up: Danielewski surfaces",
              lambda: _charts_claim(run, build))
    run.claim("dan-2", "deck identities with shifts 2eps/x and 2eps/x^2", "warm-up: gluing over the doubled line",
              lambda: _deck_claim(run))
    run.claim("dan-3", "both transition functions are antisymmetric", "warm-up: gluing over the doubled line",
              lambda: _antisymmetry_claim(run, [run.need("data").cocycle_first, run.need("data").cocycle_second]))
    run.claim("dan-4", "each transition function splits on the other surface's chart cover",
              "warm-up: triviality of the pulled-back bundles", lambda: _splitting_claim(run))
    run.claim("dan-5", "Theta is an isomorphism S1 x A^1 -> S2 x A^1 over Q(i)[x]", "warm-up: the isomorphism Theta",
              lambda: _theta_claim(run, corrupt_parity=config.corrupt == "parity"))
    run.claim("dan-6", "d = 2y d/dx + z d/dy is an LND of S1[w] with d(x) != 0", "warm-up: derivation delta1",
              lambda: _cylinder_lnd_claim(run))
    run.claim("dan-7", "the conjugate is an LND of S2[w] with nonzero image of x", "warm-up: conjugated derivation",
              lambda: _conjugate_claim(run, ()))
    run.claim("dan-8", "conclusion: ML(S2 x A^1) = Q(i)", "warm-up: cancellation counterexample", c8)
    if config.negative_controls:
        def wrong_shift():
            data = danielewski_data()
            b = data.first
            loc = b.chart.localized()
            _require({"deck identity": check_deck_identity(b.phi_base, b.chart, loc("2*eps*x^-2"))})
            return {"certificates": []}

        def broken_parity():
            sub = _Runner("nc", config)
            _charts_claim(sub, danielewski_data)
            _splitting_claim(sub)
            return _theta_claim(sub, corrupt_parity=True)

        run.claim("nc-dan-shift", "negative control: S1 deck identity with shift 2eps/x^2", "negative control",
                  wrong_shift)
        run.claim("nc-dan-parity", "negative control: splitting shifted by eps", "negative control", broken_parity)
    return run.report()


# -- remarks ---------------------------------------------------------------------------

def remarks(config: Config = Config(), run: _Runner | None = None) -> Report:
    run = run or _Runner("remarks", config)
    cap = config.lnd_cap
    D = config.kernel_degree
    data = kr_data()
    c1, c2 = data.cocycle_first, data.cocycle_second
    if config.corrupt == "cocycle":
        c2 = Cocycle(data.base_cover, RingFraction(data.base_cover.total, "2*mu^3 + 2*mu*x", "x"), name="perturbed")
    B1 = data.first.base
    B2 = data.second.base

    def r1():
        return _antisymmetry_claim(run, [c1, c2])

    def r2():
        out = _non_cohomologous(c1, c2)
        if out["pole_order"] != 2:
            raise Refuted(f"pole order is {out['pole_order']}, not 2", out)
        return out

    def r3():
        a = Derivation(B1, {"y": "x", "z": "2*y"}, name="x d/dy + 2y d/dz")
        b = Derivation(B1, {"y": "z", "x": "2*y"}, name="z d/dy + 2y d/dx")
        ea, eb = _lnd(a, cap), _lnd(b, cap)
        run.ctx["X1"] = (a, b)
        return {"summary": "X1 carries LNDs in both directions (x and z swap roles)",
                "derivations": [a.describe(), b.describe()],
                "certificates": [C.lnd_cert(a, ea), C.lnd_cert(b, eb)]}

    def r4():
        a, b = run.need("X1")
        basis = kernel_intersection_bounded([a, b], D)
        expected = [B1.var("t") ** j for j in range(-D, D + 1)]
        if not span_equal(basis, expected):
            raise Refuted("joint kernel is not spanned by powers of t", {"basis": [str(p) for p in basis]})
        return {"summary": f"joint kernel in degree <= {D} is span{{t^j : |j| <= {D}}}, consistent with "
                           "ML(X1) ⊆ Q(i)[t^±1]",
                "label": BOUNDED_LABEL.format(D), "basis": [str(p) for p in basis],
                "certificates": [C.kernel_cert([a, b], D, basis)]}

    def r5():
        c = Derivation(B2, {"y": "x^2", "z": "2*y"}, name="x^2 d/dy + 2y d/dz")
        ec = _lnd(c, cap)
        basis = kernel_intersection_bounded([c], D)
        expected = [B2.var("x") ** a * B2.var("t") ** b for a in range(D + 1) for b in range(-D, D + 1)
                    if a + abs(b) <= D]
        if not span_equal(basis, expected):
            raise Refuted("kernel is not spanned by x^a t^b", {"basis": [str(p) for p in basis]})
        return {"summary": f"kernel in degree <= {D} is span{{x^a t^b}}, consistent with ML(X2) ⊆ Q(i)[t^±1][x]",
                "label": BOUNDED_LABEL.format(D), "dimension": len(basis),
                "certificates": [C.lnd_cert(c, ec), C.kernel_cert([c], D, basis)]}

    run.claim("rem-1", "both cocycles are antisymmetric", "remark: non-isomorphic bundles", r1)
    run.claim("rem-2", "the cocycles are not cohomologous (pole of order 2 along x = 0)",
              "remark: non-cohomologous cocycles", r2)
    run.claim("rem-3", "X1 has LNDs x d/dy + 2y d/dz and z d/dy + 2y d/dx", "remark: symmetry of X1", r3)
    run.claim("rem-4", "bounded kernel evidence for ML(X1) ⊆ Q(i)[t^±1]", "remark: invariants of X1", r4)
    run.claim("rem-5", "bounded kernel evidence for ML(X2) ⊆ Q(i)[t^±1][x]", "remark: invariants of X2", r5)
    if config.negative_controls:
        def cohomologous_pair():
            g = data.base_cover.total("mu*x^2 + mu^3")
            moved = data.base_cover.sigma(g) - g
            v = c1.value
            shifted = RingFraction(v.ring, v.num + moved * v.den, v.den)
            return _non_cohomologous(c1, Cocycle(data.base_cover, shifted, name="c1 + coboundary"))

        run.claim("nc-rem-coboundary", "negative control: c1 against c1 + sigma(g) - g", "negative control",
                  cohomologous_pair)
    return run.report()


def _non_cohomologous(c1: Cocycle, c2: Cocycle) -> dict:
    verdict = is_coboundary_on_base(c1, c2)
    if verdict.status != "refuted":
        raise Refuted("the difference is a coboundary on the base cover", verdict.as_dict())
    return {"summary": f"c1 - c2 has a pole of order {verdict.pole_order} along x = 0, while sigma(h) - h is "
                       "regular there for every regular h",
            "pole_order": verdict.pole_order,
            "certificates": [C.pole_cert(c1.cover.total, c1.value, c2.value, "x", verdict.pole_order)]}


# -- entry point -------------------------------------------------------------------------

def run_pipeline(name: str, config: Config = Config()) -> Report:
    if name == "kr-cylinder":
        return kr_cylinder(config)
    if name == "danielewski":
        return danielewski(config)
    if name == "remarks":
        return remarks(config)
    if name == "all":
        run = _Runner("all", config)
        kr_cylinder(config, run)
        run.ctx.clear()
        danielewski(config, run)
        run.ctx.clear()
        remarks(config, run)
        return run.report()
    raise ValueError(f"unknown pipeline {name!r}; expected one of {PIPELINES}")
