"""Morphisms of presented rings, double covers, fractions and Cech cocycles.

Sign convention: a bundle chart glues by ``sigma(v) = v + c`` and a splitting ``h``
satisfies ``sigma(h) - h = c``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .derivation import Derivation, NilpotencyCertificate, exponential
from .exact import GaussianRational, LinearSystem, solve_linear
from .ideal import PresentedRing
from .poly import LaurentPoly, RingError, pole_order, substitute


class MorphismError(ValueError):
    pass


# -- morphisms -----------------------------------------------------------------------

class RingMorphism:
    """``source -> target`` given by generator images (normal forms in the target)."""

    def __init__(
        self,
        source: PresentedRing,
        target: PresentedRing,
        images: Mapping[str, LaurentPoly | str | int],
        unit_witnesses: Mapping[str, LaurentPoly | str] | None = None,
        name: str = "",
    ):
        self.source = source
        self.target = target
        self.name = name
        missing = [v for v in source.names if v not in images]
        if missing:
            raise MorphismError(f"{name or 'morphism'}: no image for {missing}")
        self.images = {v: target.normal_form(target.element(images[v])) for v in source.names}
        witnesses = {}
        given = dict(unit_witnesses or {})
        for v, inv in source.spec.variables:
            if not inv:
                continue
            if v in given:
                witnesses[v] = target.normal_form(target.element(given[v]))
            elif self.images[v].is_monomial() and _is_unit_monomial(target, self.images[v]):
                witnesses[v] = self.images[v] ** -1
            else:
                raise MorphismError(f"{name or 'morphism'}: image of unit {v!r} needs a witness")
        self.unit_witnesses = witnesses

    def __repr__(self):
        body = ", ".join(f"{v} -> {p}" for v, p in self.images.items())
        return f"RingMorphism({self.name}: {body})"

    def __call__(self, p) -> LaurentPoly:
        p = self.source.element(p)
        return substitute(
            p, self.images, self.target.spec, inverses=self.unit_witnesses, reduce=self.target.normal_form
        )

    def describe(self) -> dict:
        return {
            "images": {v: str(p) for v, p in self.images.items()},
            "unit_witnesses": {v: str(p) for v, p in self.unit_witnesses.items()},
        }


def _is_unit_monomial(ring: PresentedRing, p: LaurentPoly) -> bool:
    (e, _), = p.terms.items()
    return all(k == 0 or inv for k, inv in zip(e, ring.spec.invertible))


@dataclass
class CheckResult:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_morphism(M: RingMorphism) -> CheckResult:
    """Relations map to zero and every unit witness is an inverse."""
    failures = []
    for r in M.source.relations:
        img = M(r)
        if not img.is_zero():
            failures.append(f"relation {r} maps to {img}")
    for v, w in M.unit_witnesses.items():
        prod = M.target.normal_form(M.images[v] * w)
        if prod != 1:
            failures.append(f"witness for {v}: image*witness = {prod}")
    return CheckResult(not failures, failures)


def compose(M2: RingMorphism, M1: RingMorphism, name: str = "") -> RingMorphism:
    """``M2 o M1``."""
    if M1.target.spec != M2.source.spec:
        raise MorphismError("morphisms are not composable")
    images = {v: M2(p) for v, p in M1.images.items()}
    witnesses = {v: M2(p) for v, p in M1.unit_witnesses.items()}
    return RingMorphism(M1.source, M2.target, images, witnesses, name=name or f"{M2.name}∘{M1.name}")


def identity(ring: PresentedRing) -> RingMorphism:
    return RingMorphism(ring, ring, {v: ring.var(v) for v in ring.names}, name="id")


def check_inverse_pair(M: RingMorphism, N: RingMorphism) -> CheckResult:
    """Both composites are the identity on generators."""
    failures = []
    for v in M.source.names:
        back = N(M.images[v])
        if not M.source.equal(back, M.source.var(v)):
            failures.append(f"N(M({v})) = {back}")
    for v in N.source.names:
        back = M(N.images[v])
        if not N.source.equal(back, N.source.var(v)):
            failures.append(f"M(N({v})) = {back}")
    return CheckResult(not failures, failures)


def check_equivariance(
    M: RingMorphism,
    d_source: Derivation,
    d_target: Derivation,
    cert_source: NilpotencyCertificate,
    cert_target: NilpotencyCertificate,
    s: str = "s",
) -> CheckResult:
    """``M o exp(s*d_source) = exp(s*d_target) o M`` on the generators of ``M.source``.

    Geometrically: the map of spaces intertwines the two additive-group actions.
    """
    while s in M.source.names or s in M.target.names:
        s += "_"
    exp_src = exponential(d_source, cert_source, s)
    exp_tgt = exponential(d_target, cert_target, s)
    ts = exp_tgt.target
    m_s_images = {v: p.to_ring(ts.spec) for v, p in M.images.items()}
    m_s_images[s] = ts.var(s)
    m_s_witnesses = {v: p.to_ring(ts.spec) for v, p in M.unit_witnesses.items()}
    failures = []
    for v in M.source.names:
        lhs = substitute(exp_src.images[v], m_s_images, ts.spec, inverses=m_s_witnesses, reduce=ts.normal_form)
        rhs = exp_tgt(M.images[v])
        if not ts.equal(lhs, rhs):
            failures.append(f"generator {v}: {lhs} != {rhs}")
    return CheckResult(not failures, failures)


# -- fractions and covers ----------------------------------------------------------

class RingFraction:
    """``numerator / denominator`` in a presented ring; the denominator is a nonzerodivisor."""

    def __init__(self, ring: PresentedRing, numerator, denominator=1):
        self.ring = ring
        self.num = ring.element(numerator)
        self.den = ring.element(denominator)
        if ring.is_zero(self.den):
            raise ZeroDivisionError("fraction with zero denominator")

    def __repr__(self):
        return f"RingFraction(({self.num}) / ({self.den}))"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def equals(self, other: RingFraction) -> bool:
        return self.ring.is_zero(self.num * other.den - other.num * self.den)

    def __sub__(self, other: RingFraction) -> RingFraction:
        if self.den == other.den:
            return RingFraction(self.ring, self.num - other.num, self.den)
        return RingFraction(self.ring, self.num * other.den - other.num * self.den, self.den * other.den)

    def __add__(self, other: RingFraction) -> RingFraction:
        if self.den == other.den:
            return RingFraction(self.ring, self.num + other.num, self.den)
        return RingFraction(self.ring, self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RingFraction(self.ring, -self.num, self.den)

    def mapped(self, M: RingMorphism) -> RingFraction:
        return RingFraction(M.target, M(self.num), M(self.den))

    def to_ring(self, ring: PresentedRing) -> RingFraction:
        return RingFraction(ring, self.num.to_ring(ring.spec), self.den.to_ring(ring.spec))

    def as_laurent(self, ring: PresentedRing) -> LaurentPoly:
        """Exact quotient in ``ring`` when the denominator is a unit monomial there."""
        den = self.den.to_ring(ring.spec)
        if not den.is_monomial() or not _is_unit_monomial(ring, den):
            raise RingError(f"denominator {den} is not a unit monomial in the target ring")
        return ring.normal_form(self.num.to_ring(ring.spec) * den ** -1)

    def simplified(self) -> RingFraction:
        """Cancel the common monomial content of numerator and denominator."""
        num, den = self.num, self.den
        if num.is_zero():
            return RingFraction(self.ring, num, 1)
        n = len(self.ring.spec)
        common = []
        for j in range(n):
            common.append(max(0, min(min(e[j] for e in num.terms), min(e[j] for e in den.terms))))
        if any(common):
            neg = tuple(-k for k in common)
            num, den = num.shift(neg), den.shift(neg)
        if den.is_constant():
            c = den.constant_term()
            return RingFraction(self.ring, num.scale(c.inverse()), 1)
        return RingFraction(self.ring, num, den)

    def describe(self) -> dict:
        return {"numerator": str(self.num), "denominator": str(self.den)}


class DoubleCover:
    """A ring with a free involution ``sigma`` (``mu -> -mu`` or a chart swap)."""

    def __init__(self, total: PresentedRing, sigma_images: Mapping[str, LaurentPoly | str],
                 base_generators: Sequence[str] = (), name: str = ""):
        self.total = total
        self.name = name
        images = {v: total.var(v) for v in total.names}
        images.update({v: total.element(p) for v, p in sigma_images.items()})
        self.sigma = RingMorphism(total, total, images, name=f"sigma[{name}]")
        self.base_generators = tuple(base_generators)

    def check(self) -> CheckResult:
        res = check_morphism(self.sigma)
        failures = list(res.failures)
        for v in self.total.names:
            twice = self.sigma(self.sigma.images[v])
            if twice != self.total.var(v):
                failures.append(f"sigma^2({v}) = {twice}")
        if all(self.sigma.images[v] == self.total.var(v) for v in self.total.names):
            failures.append("sigma is the identity")
        for g in self.base_generators:
            p = self.total.element(g)
            if not self.total.equal(self.sigma(p), p):
                failures.append(f"base generator {g} is not invariant")
        return CheckResult(not failures, failures)

    def restrict(self, ring: PresentedRing, name: str = "") -> DoubleCover:
        """The same involution on another ring sharing the involuted variables."""
        imgs = {v: p.to_ring(ring.spec) for v, p in self.sigma.images.items()
                if v in ring.names and p != self.total.var(v)}
        return DoubleCover(ring, imgs, self.base_generators, name=name or self.name)


class Cocycle:
    """Transition function of a ``Z/2``-cover: off-diagonal value ``c`` with ``sigma(c) = -c``.

    The diagonal component is fixed to zero. Construction rejects non-antisymmetric values.
    """

    def __init__(self, cover: DoubleCover, value: RingFraction, name: str = ""):
        self.cover = cover
        self.value = value
        self.name = name
        if not self.antisymmetric():
            raise ValueError(f"cocycle {name or value} is not antisymmetric")

    def antisymmetric(self) -> bool:
        s = self.value.mapped(self.cover.sigma)
        return (s + self.value).equals(RingFraction(self.cover.total, 0))

    def __repr__(self):
        return f"Cocycle({self.name}: {self.value})"

    def laurent(self, ring: PresentedRing) -> LaurentPoly:
        return self.value.as_laurent(ring)


# -- bundle charts ---------------------------------------------------------------------

@dataclass
class GaChart:
    """Trivializing chart of an additive-group bundle over the cover.

    ``phi`` maps the cover ring into ``chart`` = Q(i)[v][base]; ``shift`` is the
    bundle's own cocycle, i.e. ``phi(v + shift, sigma(base)) = phi(v, base)``;
    ``fiber_reps`` express ``v`` as fractions on the cover.
    """

    name: str
    cover: DoubleCover
    chart: PresentedRing
    phi: RingMorphism
    fiber: str
    shift: Cocycle
    fiber_reps: list
    gluing_var: str = "x"

    def localized(self) -> PresentedRing:
        spec = self.chart.spec.localize(self.gluing_var)
        return PresentedRing(spec, [r.to_ring(spec) for r in self.chart.relations])

    def twist(self, ring: PresentedRing | None = None, shift: LaurentPoly | None = None) -> RingMorphism:
        """``v -> v + shift``, base variables by ``sigma``, on the chart localized at the gluing variable."""
        ring = ring or self.localized()
        if shift is None:
            shift = self.shift.laurent(ring)
        images = {}
        for v in ring.names:
            if v == self.fiber:
                images[v] = ring.var(v) + shift.to_ring(ring.spec)
            elif v in self.cover.total.names:
                images[v] = self.cover.sigma.images[v].to_ring(ring.spec)
            else:
                images[v] = ring.var(v)
        return RingMorphism(ring, ring, images, name=f"twist[{self.name}]")

    def check_reps(self) -> CheckResult:
        failures = []
        v = self.chart.var(self.fiber)
        for rep in self.fiber_reps:
            if not self.chart.equal(self.phi(rep.num), v * self.phi(rep.den)):
                failures.append(f"{rep} does not map to {self.fiber}")
        return CheckResult(not failures, failures)


def fiber_coordinate_reps(phi: RingMorphism, fiber: str, gluing: str, linear_gen: str,
                          quadratic_gen: str) -> list[RingFraction]:
    """Two fractions for the chart coordinate read off the chart map.

    If ``phi(linear_gen) = a + g^n * v`` and ``phi(quadratic_gen) = b + v*(2a + g^n*v)``, then
    ``v = (linear_gen - a)/g^n = (quadratic_gen - b)/(linear_gen + a)``.
    """
    cover = phi.source
    ly = phi.images[linear_gen].coefficient_in(fiber)
    if set(ly) != {0, 1} or not ly[1].is_monomial():
        raise MorphismError(f"{linear_gen} is not affine-linear in {fiber} with monomial slope")
    a = ly[0].to_ring(cover.spec)
    slope = ly[1].to_ring(cover.spec)
    lz = phi.images[quadratic_gen].coefficient_in(fiber)
    b = lz.get(0, phi.target.spec.zero()).to_ring(cover.spec)
    y = cover.var(linear_gen)
    z = cover.var(quadratic_gen)
    return [
        RingFraction(cover, y - a, slope),
        RingFraction(cover, z - b, y + a),
    ]


def check_deck_identity(M: RingMorphism, chart: GaChart, shift: LaurentPoly | None = None) -> CheckResult:
    """``M(v + shift, x, sigma(base)) = M(v, x, base)`` for every generator (x inverted)."""
    ring = chart.localized()
    tw = chart.twist(ring, shift)
    failures = []
    for v in M.source.names:
        img = M.images[v].to_ring(ring.spec)
        moved = tw(img)
        if not ring.equal(moved, img):
            failures.append(f"component {v}: {moved} != {img}")
    return CheckResult(not failures, failures)


# -- splittings --------------------------------------------------------------------------

@dataclass(frozen=True)
class Ansatz:
    """Span of all products of at most ``degree`` of the monomial ``generators``."""

    generators: tuple
    degree: int

    def monomials(self, ring: PresentedRing) -> list[tuple]:
        gens = [ring.element(g) for g in self.generators]
        exps = []
        for g in gens:
            if not g.is_monomial():
                raise ValueError(f"ansatz generator {g} is not a monomial")
            exps.append(next(iter(g.terms)))
        n = len(ring.spec)
        seen = {(0,) * n}
        frontier = {(0,) * n}
        for _ in range(self.degree):
            nxt = set()
            for e in frontier:
                for g in exps:
                    f = tuple(a + b for a, b in zip(e, g))
                    if f not in seen:
                        nxt.add(f)
            seen |= nxt
            frontier = nxt
        out = set()
        for e in seen:
            m = ring.normal_form(LaurentPoly(ring.spec, {e: GaussianRational(1)}, check=False))
            if m.is_monomial():
                out.add(next(iter(m.terms)))
        return sorted(out)


@dataclass
class SplittingWitness:
    """``h_plus`` with ``sigma(h_plus) - h_plus = c`` on the cover, plus alternative
    representations whose denominators generate the excluded locus."""

    cocycle: Cocycle
    chart: GaChart
    chart_solution: LaurentPoly
    h_plus: RingFraction
    alt_representations: list
    excluded_locus: list

    def representations(self) -> list[RingFraction]:
        return [self.h_plus] + list(self.alt_representations)

    def verify(self) -> CheckResult:
        failures = []
        cover = self.chart.cover
        ring = cover.total
        c = self.cocycle.value.to_ring(ring)
        for rep in self.representations():
            diff = rep.mapped(cover.sigma) - rep
            if not diff.equals(c):
                failures.append(f"sigma-difference of {rep} is not the cocycle")
        reps = self.representations()
        for r1, r2 in itertools.combinations(reps, 2):
            if not r1.equals(r2):
                failures.append(f"representations {r1} and {r2} differ")
        loci = list(self.excluded_locus) + [cover.sigma(g) for g in self.excluded_locus]
        if not ring.contains_one(loci):
            failures.append("excluded loci of the two branches meet")
        loc = self.chart.localized()
        tw = self.chart.twist(loc)
        h = self.chart_solution.to_ring(loc.spec)
        if not loc.equal(tw(h) - h, self.cocycle.laurent(loc)):
            failures.append("chart equation fails")
        return CheckResult(not failures, failures)

    def describe(self) -> dict:
        return {
            "chart_solution": str(self.chart_solution),
            "h_plus": self.h_plus.describe(),
            "alt_representations": [r.describe() for r in self.alt_representations],
            "excluded_locus": [str(g) for g in self.excluded_locus],
        }


@dataclass(frozen=True)
class NoSolutionWithinAnsatz:
    degree: int
    unknowns: int

    def __bool__(self):
        return False


def split_cocycle(c: Cocycle, chart: GaChart, ansatz: Ansatz) -> SplittingWitness | NoSolutionWithinAnsatz:
    """Solve ``twist(h) - h = c`` over the ansatz by exact linear algebra, then
    transport ``h`` to fractions on the cover and verify the witness."""
    loc = chart.localized()
    tw = chart.twist(loc)
    monos = ansatz.monomials(chart.chart)
    rows: dict[tuple, dict[int, GaussianRational]] = {}
    for j, e in enumerate(monos):
        m = LaurentPoly(loc.spec, {e: GaussianRational(1)}, check=False)
        diff = loc.normal_form(tw(m) - m)
        for te, coef in diff.terms.items():
            rows.setdefault(te, {})[j] = coef
    target = c.laurent(loc)
    for te in target.terms:
        rows.setdefault(te, {})
    keys = sorted(rows)
    rhs = [target.terms.get(k, GaussianRational(0)) for k in keys]
    sol = solve_linear(LinearSystem([rows[k] for k in keys], rhs, ncols=len(monos)))
    if not sol.consistent:
        return NoSolutionWithinAnsatz(ansatz.degree, len(monos))
    h = LaurentPoly(chart.chart.spec, {monos[j]: a for j, a in enumerate(sol.solution) if not a.is_zero()},
                    check=False)
    witness = transport_splitting(c, chart, h)
    check = witness.verify()
    if not check:
        raise ArithmeticError(f"splitting failed verification: {check.failures}")
    return witness


def transport_splitting(c: Cocycle, chart: GaChart, h: LaurentPoly) -> SplittingWitness:
    """Substitute the fiber representations into the chart polynomial ``h``."""
    cover = chart.cover.total
    reps = []
    coeffs = h.coefficient_in(chart.fiber)
    top = max(coeffs) if coeffs else 0
    for rep in chart.fiber_reps:
        num = cover.spec.zero()
        for k, ck in coeffs.items():
            ck_cov = ck.to_ring(cover.spec)
            num = num + ck_cov * rep.num ** k * rep.den ** (top - k)
        frac = RingFraction(cover, cover.normal_form(num), cover.normal_form(rep.den ** top)).simplified()
        reps.append(frac)
    # a representation is regular off the zero set of its fiber denominator
    excluded = []
    for rep, frac in zip(chart.fiber_reps, reps):
        g = cover.spec.one() if frac.den.is_constant() else rep.den
        if g not in excluded:
            excluded.append(g)
    return SplittingWitness(c, chart, h, reps[0], reps[1:], excluded)


@dataclass(frozen=True)
class CoboundaryVerdict:
    status: str  # "refuted" | "coboundary" | "requires-search"
    pole_order: int = 0
    witness: LaurentPoly | None = None

    def as_dict(self) -> dict:
        out = {"status": self.status, "pole_order": self.pole_order}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


def is_coboundary_on_base(c1: Cocycle, c2: Cocycle, gluing_var: str = "x") -> CoboundaryVerdict:
    """Decide whether ``c1 - c2 = sigma(h) - h`` for ``h`` regular on the base cover.

    ``sigma(h) - h`` is regular along ``gluing_var = 0``, so a pole refutes. A regular
    antisymmetric difference ``d`` is split by ``h = -d/2``.
    """
    base = c1.cover.total
    loc = PresentedRing(base.spec.localize(gluing_var), [r.to_ring(base.spec.localize(gluing_var))
                                                          for r in base.relations])
    diff = loc.normal_form(c1.laurent(loc) - c2.laurent(loc))
    order = pole_order(diff, gluing_var)
    if order > 0:
        return CoboundaryVerdict("refuted", order)
    h = diff.scale(GaussianRational(-1, 0) / 2).to_ring(base.spec)
    sigma = c1.cover.sigma
    if base.equal(sigma(h) - h, diff.to_ring(base.spec)):
        return CoboundaryVerdict("coboundary", 0, h)
    return CoboundaryVerdict("requires-search", 0)
