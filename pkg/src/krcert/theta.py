"""The cylinder isomorphism: construction on the cover, descent, conjugation of an LND
and clearing of unit denominators."""

from __future__ import annotations

from dataclasses import dataclass, field

from .data import Bundle, CylinderData
from .derivation import DEFAULT_CAP, Derivation, Inconclusive, NilpotencyCertificate, lnd_certify, well_defined
from .geometry import CheckResult, RingMorphism, SplittingWitness, check_inverse_pair, check_morphism
from .ideal import PresentedRing, default_blocks
from .poly import LaurentPoly, RingError, RingSpec, pole_order, substitute


class DescentError(ValueError):
    """An image on the cover is not sigma-invariant or does not lie in the base subring."""

    def __init__(self, message: str, expression: LaurentPoly):
        super().__init__(f"{message}: {expression}")
        self.expression = expression


class _Descent:
    """Pull elements of the chart ring (with ``w``) back to ``base[w]``.

    Invariance is tested on the chart with the gluing variable inverted; membership in
    the image of ``base[w]`` by normal form modulo the graph ideal in an elimination order.
    """

    def __init__(self, bundle: Bundle, w: str):
        self.bundle = bundle
        self.w = w
        chart = bundle.chart
        self.chart_w = chart.chart.adjoin(w)
        loc = chart.localized()
        self.loc_w = loc.adjoin(w)
        self.twist = chart.twist(self.loc_w)
        self.target = bundle.base.adjoin(w, name=f"{bundle.base.name}[{w}]")
        base_names = set(bundle.base.names)
        self.eliminated = [n for n in chart.chart.names if n not in base_names]
        ev = [(n, chart.chart.spec.is_invertible(n)) for n in self.eliminated]
        ev += list(self.target.spec.variables)
        spec = RingSpec(ev)
        rels = [r.to_ring(spec) for r in chart.chart.relations]
        for g in bundle.base.names:
            img = bundle.phi_base.images[g]
            if not (g in chart.chart.names and img == chart.chart.var(g)):
                rels.append(spec.var(g) - img.to_ring(spec))
        self.graph = PresentedRing(spec, rels, default_blocks(spec, self.eliminated), name="graph")
        self._elim_idx = [spec.index(n) for n in self.eliminated]

    def __call__(self, F: LaurentPoly, label: str = "") -> LaurentPoly:
        Fl = F.to_ring(self.loc_w.spec)
        if not self.loc_w.equal(self.twist(Fl), Fl):
            raise DescentError(f"image of {label} is not invariant under the deck involution", F)
        red = self.graph.normal_form(F.to_ring(self.graph.spec))
        if any(e[j] for e in red.terms for j in self._elim_idx):
            raise DescentError(f"image of {label} does not lie in the base ring", red)
        return self.target.normal_form(red.to_ring(self.target.spec))

    def lift(self, p: LaurentPoly) -> LaurentPoly:
        """Image of an element of ``base[w]`` in the chart ring."""
        images = {g: img.to_ring(self.chart_w.spec) for g, img in self.bundle.phi_base.images.items()}
        images[self.w] = self.chart_w.var(self.w)
        inv = {g: img.to_ring(self.chart_w.spec) for g, img in self.bundle.phi_base.unit_witnesses.items()}
        return substitute(self.target.element(p), images, self.chart_w.spec, inverses=inv,
                          reduce=self.chart_w.normal_form)


def _transfer(source_bundle: Bundle, target_bundle: Bundle, h_src: LaurentPoly, h_tgt: LaurentPoly,
              w: str, descent: _Descent) -> dict:
    """Images of ``target.base[w]`` generators as elements of the source chart ring.

    ``h_src`` splits the target's cocycle on the source chart; ``h_tgt`` splits the source's
    cocycle on the target chart. The target fiber coordinate is ``w + h_src(v)`` and the new
    cylinder coordinate is ``v - h_tgt(target fiber coordinate)``.
    """
    ring = descent.chart_w
    src_chart = source_bundle.chart
    v = ring.var(src_chart.fiber)
    other_fiber = ring.var(w) + h_src.to_ring(ring.spec)
    fiber_images = {n: ring.var(n) for n in target_bundle.chart.chart.names}
    fiber_images[target_bundle.chart.fiber] = other_fiber
    inverses = {n: ring.var(n) ** -1 for n, inv in target_bundle.chart.chart.spec.variables if inv}
    out = {}
    for g, img in target_bundle.phi_base.images.items():
        out[g] = substitute(img, fiber_images, ring.spec, inverses=inverses, reduce=ring.normal_form)
    h_moved = substitute(h_tgt, fiber_images, ring.spec, inverses=inverses, reduce=ring.normal_form)
    out[w] = ring.normal_form(v - h_moved)
    return out


@dataclass
class ThetaResult:
    forward: RingMorphism  # second.base[w] -> first.base[w]
    inverse: RingMorphism  # first.base[w] -> second.base[w]
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(bool(c) for c in self.checks.values())


def build_theta(data: CylinderData, h_on_second: SplittingWitness, h_on_first: SplittingWitness) -> ThetaResult:
    """Construct ``Theta*: B2[w] -> B1[w]`` and its inverse from explicit splittings.

    ``h_on_second`` splits the first cocycle on the second chart; ``h_on_first`` splits the
    second cocycle on the first chart. Raises ``DescentError`` if an image fails to descend.
    """
    w = data.w
    b1, b2 = data.first, data.second
    desc1 = _Descent(b1, w)
    desc2 = _Descent(b2, w)
    h1 = h_on_first.chart_solution
    h2 = h_on_second.chart_solution
    fwd_chart = _transfer(b1, b2, h1, h2, w, desc1)
    inv_chart = _transfer(b2, b1, h2, h1, w, desc2)
    fwd = {g: desc1(F, g) for g, F in fwd_chart.items()}
    inv = {g: desc2(F, g) for g, F in inv_chart.items()}
    forward = RingMorphism(desc2.target, desc1.target, fwd, _unit_witnesses(desc2.target, desc1.target, fwd),
                           name="Theta*")
    inverse = RingMorphism(desc1.target, desc2.target, inv, _unit_witnesses(desc1.target, desc2.target, inv),
                           name="Theta*^-1")
    checks = {
        "forward_morphism": check_morphism(forward),
        "inverse_morphism": check_morphism(inverse),
        "inverse_pair": check_inverse_pair(forward, inverse),
        "fixes_base": _fixes(forward, inverse, data.invariant_vars),
    }
    return ThetaResult(forward, inverse, checks)


def _unit_witnesses(source: PresentedRing, target: PresentedRing, images: dict) -> dict:
    out = {}
    for n, inv in source.spec.variables:
        if inv:
            img = images[n]
            if img.is_monomial():
                out[n] = img ** -1
    return out


def _fixes(forward: RingMorphism, inverse: RingMorphism, names) -> CheckResult:
    failures = []
    for n in names:
        if forward.images[n] != forward.target.var(n):
            failures.append(f"Theta*({n}) = {forward.images[n]}")
        if inverse.images[n] != inverse.target.var(n):
            failures.append(f"Theta*^-1({n}) = {inverse.images[n]}")
    return CheckResult(not failures, failures)


@dataclass
class ConjugateResult:
    derivation: Derivation
    certificate: NilpotencyCertificate | Inconclusive
    checks: dict


def conjugate_derivation(D: Derivation, theta: RingMorphism, inverse: RingMorphism,
                         cap: int = DEFAULT_CAP, nonzero: str = "x", killed: tuple = ("t",)) -> ConjugateResult:
    """``delta = inverse o D o theta`` on the generators of ``theta.source``."""
    if D.ring.spec != theta.target.spec:
        raise RingError("derivation does not live on the target of theta")
    images = {g: inverse(D.apply(theta.images[g])) for g in theta.source.names}
    delta = Derivation(theta.source, images, name=f"conj({D.name})")
    cert = lnd_certify(delta, cap)
    checks = {
        "lnd": CheckResult(isinstance(cert, NilpotencyCertificate),
                           [] if isinstance(cert, NilpotencyCertificate) else [cert.as_dict()]),
        f"{nonzero}_not_in_kernel": CheckResult(not delta.images[nonzero].is_zero(), []),
    }
    for g in killed:
        if g in delta.ring.names:
            checks[f"{g}_in_kernel"] = CheckResult(delta.images[g].is_zero(), [str(delta.images[g])])
    return ConjugateResult(delta, cert, checks)


@dataclass
class ClearedDerivation:
    k: int
    derivation: Derivation
    certificate: NilpotencyCertificate | Inconclusive
    checks: dict


def clear_denominators(delta: Derivation, target: PresentedRing, unit: str = "t",
                       cap: int = DEFAULT_CAP, nonzero: str = "x") -> ClearedDerivation:
    """Smallest ``k`` with ``unit^k * delta`` polynomial in ``unit`` on every generator,
    and that derivation on ``target`` (the same presentation with ``unit`` not inverted)."""
    k = max((pole_order(img, unit) for img in delta.images.values()), default=0)
    factor = delta.ring.var(unit) ** k
    images = {}
    for g, img in delta.images.items():
        scaled = delta.ring.normal_form(img * factor)
        images[g] = scaled.to_ring(target.spec)
    D = Derivation(target, images, name=f"{unit}^{k}*{delta.name}")
    cert = lnd_certify(D, cap)
    checks = {
        "well_defined": CheckResult(well_defined(D), []),
        "lnd": CheckResult(isinstance(cert, NilpotencyCertificate),
                           [] if isinstance(cert, NilpotencyCertificate) else [cert.as_dict()]),
        f"{nonzero}_not_in_kernel": CheckResult(not D.images[nonzero].is_zero(), []),
    }
    return ClearedDerivation(k, D, cert, checks)


def conjugate_by(D: Derivation, iso: RingMorphism, inverse: RingMorphism, name: str = "") -> Derivation:
    """Transport ``D`` (on ``iso.target``) to ``iso.source``: ``g -> inverse(D(iso(g)))``."""
    images = {g: inverse(D.apply(iso.images[g])) for g in iso.source.names}
    return Derivation(iso.source, images, name=name or D.name)
