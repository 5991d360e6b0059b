"""Derivations of presented rings: application, well-definedness, local nilpotency,
exponential flows and bounded-degree kernels."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial
from typing import Mapping, Sequence

from .exact import GaussianRational, LinearSystem, solve_linear
from .ideal import PresentedRing
from .poly import LaurentPoly, grevlex_key, partial_derivative, substitute

DEFAULT_CAP = 64


class Derivation:
    """A derivation determined by the images of the generators.

    Leibniz and the power rule fix the extension; ``apply`` returns normal forms.
    """

    def __init__(self, ring: PresentedRing, images: Mapping[str, LaurentPoly | str | int], name: str = ""):
        self.ring = ring
        self.name = name
        imgs = {}
        for v in ring.names:
            val = images.get(v, 0)
            imgs[v] = ring.normal_form(ring.element(val))
        unknown = set(images) - set(ring.names)
        if unknown:
            raise ValueError(f"images given for unknown variables {sorted(unknown)}")
        self.images = imgs

    def __repr__(self):
        body = " + ".join(f"({p})*d/d{v}" for v, p in self.images.items() if p)
        return f"Derivation({self.name or ''}: {body or '0'})"

    def raw_apply(self, p: LaurentPoly) -> LaurentPoly:
        acc = self.ring.spec.zero()
        for v, img in self.images.items():
            if img.is_zero():
                continue
            dp = partial_derivative(p, v)
            if not dp.is_zero():
                acc = acc + img * dp
        return acc

    def apply(self, p: LaurentPoly | str) -> LaurentPoly:
        return self.ring.normal_form(self.raw_apply(self.ring.element(p)))

    __call__ = apply

    def iterate(self, p, n: int) -> LaurentPoly:
        q = self.ring.element(p)
        for _ in range(n):
            q = self.apply(q)
        return q

    def scaled(self, factor: LaurentPoly | str) -> Derivation:
        f = self.ring.element(factor)
        return Derivation(self.ring, {v: f * img for v, img in self.images.items()}, name=self.name)

    def describe(self) -> dict:
        return {v: str(p) for v, p in self.images.items() if not p.is_zero()}


def apply(D: Derivation, p) -> LaurentPoly:
    return D.apply(p)


def well_defined(D: Derivation) -> bool:
    """True iff the image of every relation reduces to zero."""
    return all(D.ring.is_zero(D.raw_apply(r)) for r in D.ring.relations)


def relation_images(D: Derivation) -> list[LaurentPoly]:
    return [D.apply(r) for r in D.ring.relations]


@dataclass(frozen=True)
class NilpotencyCertificate:
    indices: dict  # generator -> n with D^n(g) = 0 and D^(n-1)(g) != 0
    cap: int

    def as_dict(self) -> dict:
        return {"indices": dict(self.indices), "cap": self.cap}


@dataclass(frozen=True)
class Inconclusive:
    generator: str
    survivor: LaurentPoly
    cap: int
    partial: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"inconclusive_at": self.generator, "cap": self.cap, "survivor": str(self.survivor)}


def lnd_certify(D: Derivation, cap: int = DEFAULT_CAP) -> NilpotencyCertificate | Inconclusive:
    """Iterate ``D`` on each generator until the normal form vanishes.

    Generator-wise nilpotency implies local nilpotency on the whole ring (Leibniz).
    Exhausting ``cap`` gives ``Inconclusive``, never a refutation.
    """
    indices = {}
    for v in D.ring.names:
        q = D.ring.var(v)
        n = 0
        while not q.is_zero():
            if n >= cap:
                return Inconclusive(v, q, cap, indices)
            q = D.apply(q)
            n += 1
        indices[v] = n
    return NilpotencyCertificate(indices, cap)


def verify_nilpotency(D: Derivation, cert: NilpotencyCertificate) -> bool:
    """Replay a certificate: ``D^(n-1)(g) != 0`` and ``D^n(g) = 0`` for every generator."""
    for v in D.ring.names:
        n = cert.indices.get(v)
        if n is None:
            return False
        q = D.ring.var(v)
        for _ in range(max(n - 1, 0)):
            q = D.apply(q)
        if n == 0:
            if not q.is_zero():
                return False
            continue
        if q.is_zero():
            return False
        if not D.apply(q).is_zero():
            return False
    return True


class ExponentialMap:
    """``g -> sum_k s^k D^k(g) / k!`` as a ring map ``R -> R[s]``."""

    def __init__(self, D: Derivation, cert: NilpotencyCertificate, s: str = "s"):
        if not isinstance(cert, NilpotencyCertificate):
            raise ValueError("exponential requires a nilpotency certificate")
        self.derivation = D
        self.certificate = cert
        self.s = s
        self.source = D.ring
        self.target = D.ring.adjoin(s)
        tspec = self.target.spec
        sv = tspec.var(s)
        images = {}
        for v in D.ring.names:
            term = D.ring.var(v)
            acc = tspec.zero()
            for k in range(cert.indices[v]):
                acc = acc + term.to_ring(tspec) * sv ** k * GaussianRational(1, 0) / factorial(k)
                term = D.apply(term)
            images[v] = self.target.normal_form(acc)
        self.images = images

    def __call__(self, p) -> LaurentPoly:
        p = self.source.element(p)
        return substitute(p, self.images, self.target.spec, reduce=self.target.normal_form)


def exponential(D: Derivation, cert: NilpotencyCertificate, s: str = "s") -> ExponentialMap:
    return ExponentialMap(D, cert, s)


def kernel_member(D: Derivation, p) -> bool:
    return D.apply(p).is_zero()


def _abs_degree(e: tuple) -> int:
    return sum(abs(k) for k in e)


def standard_monomials(ring: PresentedRing, degree: int) -> list[tuple]:
    """Normal-form monomials of absolute total degree at most ``degree``."""
    spec = ring.spec
    n = len(spec)
    out = []
    for total in range(degree + 1):
        for comp in _compositions(total, n):
            signs = [((1, -1) if inv and k else (1,)) for k, inv in zip(comp, spec.invertible)]
            for sg in itertools.product(*signs):
                e = tuple(k * s for k, s in zip(comp, sg))
                if ring.standard_monomial(e):
                    out.append(e)
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def kernel_intersection_bounded(derivations: Sequence[Derivation], degree: int) -> list[LaurentPoly]:
    """Basis (reduced echelon form) of the joint kernel inside the span of normal-form
    monomials of absolute degree at most ``degree``."""
    if not derivations:
        raise ValueError("need at least one derivation")
    ring = derivations[0].ring
    if any(D.ring is not ring and D.ring.spec != ring.spec for D in derivations):
        raise ValueError("derivations must share a ring")
    monos = standard_monomials(ring, degree)
    col = {e: j for j, e in enumerate(monos)}
    rows: dict[tuple, dict[int, GaussianRational]] = {}
    for j, e in enumerate(monos):
        m = LaurentPoly(ring.spec, {e: GaussianRational(1)}, check=False)
        for k, D in enumerate(derivations):
            img = D.apply(m)
            for te, c in img.terms.items():
                rows.setdefault((k, te), {})[j] = c
    keys = sorted(rows)
    system = LinearSystem([rows[k] for k in keys], None, ncols=len(monos))
    sol = solve_linear(system)
    basis = []
    for vec in sol.nullspace:
        terms = {monos[j]: c for j, c in enumerate(vec) if not c.is_zero()}
        basis.append(LaurentPoly(ring.spec, terms, check=False))
    return _echelon(basis, monos, col)


def _echelon(polys: list[LaurentPoly], monos: list[tuple], col: dict) -> list[LaurentPoly]:
    """Reduced row echelon form of a list of polynomials over the monomial basis."""
    if not polys:
        return []
    spec = polys[0].ring
    # columns by descending grevlex: each basis element is led by its largest monomial
    order = sorted(monos, key=grevlex_key, reverse=True)
    pos = {e: j for j, e in enumerate(order)}
    pivots: dict[int, dict] = {}
    for p in polys:
        r = {pos[e]: c for e, c in p.terms.items()}
        for j in [j for j in r if j in pivots]:
            c = r[j]
            for k, v in pivots[j].items():
                nv = r.get(k, GaussianRational(0)) - c * v
                if nv.is_zero():
                    r.pop(k, None)
                else:
                    r[k] = nv
        if not r:
            continue
        j = min(r)
        inv = r[j].inverse()
        r = {k: v * inv for k, v in r.items()}
        for pj, pr in pivots.items():
            c = pr.get(j)
            if c is not None:
                for k, v in r.items():
                    nv = pr.get(k, GaussianRational(0)) - c * v
                    if nv.is_zero():
                        pr.pop(k, None)
                    else:
                        pr[k] = nv
        pivots[j] = r
    out = []
    for j in sorted(pivots, reverse=True):
        out.append(LaurentPoly(spec, {order[k]: c for k, c in pivots[j].items()}, check=False))
    return out


def span_equal(basis_a: Sequence[LaurentPoly], basis_b: Sequence[LaurentPoly]) -> bool:
    """Whether two finite lists of polynomials span the same Q(i)-subspace."""
    if not basis_a and not basis_b:
        return True
    polys = list(basis_a) + list(basis_b)
    monos = sorted({e for p in polys for e in p.terms})
    col = {e: j for j, e in enumerate(monos)}
    ea = _echelon(list(basis_a), monos, col)
    eb = _echelon(list(basis_b), monos, col)
    return ea == eb
