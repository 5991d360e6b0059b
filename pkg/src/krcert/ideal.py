"""Groebner bases and quotient-ring computations.

Laurent rings are handled by an affine model: every invertible variable ``v`` gets a
hidden marker ``v~`` with the relation ``v*v~ - 1``. Everything public is in Laurent form.
"""

from __future__ import annotations

import heapq
import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact import ONE
from .poly import LaurentPoly, RingError, RingSpec

_add = operator.add
_sub = operator.sub


class TermOrder:
    """Block order: blocks compared in sequence, graded reverse lex inside each block.

    ``blocks`` holds variable indices of the affine model. ``lex`` is the special
    case of singleton blocks.
    """

    def __init__(self, blocks: Sequence[Sequence[int]]):
        self.blocks = tuple(tuple(b) for b in blocks if b)
        self._cache: dict = {}

    def key(self, e: tuple) -> tuple:
        k = self._cache.get(e)
        if k is None:
            parts = []
            for b in self.blocks:
                parts.append(sum(e[i] for i in b))
                parts.extend(-e[i] for i in reversed(b))
            k = tuple(parts)
            if len(self._cache) < 500_000:
                self._cache[e] = k
        return k

    def neg_key(self, e: tuple) -> tuple:
        return tuple(-x for x in self.key(e))

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"TermOrder({self.blocks})"


# -- affine polynomial helpers (dict: exponent tuple -> GaussianRational) --------------

def _lead(f: dict, order: TermOrder) -> tuple:
    return max(f, key=order.key)


def _monic(f: dict, order: TermOrder) -> dict:
    lm = _lead(f, order)
    inv = f[lm].inverse()
    if inv.is_one():
        return f
    return {e: c * inv for e, c in f.items()}


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(map(max, a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Reducer:
    __slots__ = ("lm", "support", "poly", "tail")

    def __init__(self, lm: tuple, poly: dict):
        self.lm = lm
        self.support = tuple((i, k) for i, k in enumerate(lm) if k)
        self.poly = poly
        self.tail = [(e, c) for e, c in poly.items() if e != lm]

    def divides(self, e: tuple) -> bool:
        for i, k in self.support:
            if e[i] < k:
                return False
        return True


def _reduce(f: dict, reducers: Sequence[_Reducer], order: TermOrder, full: bool = True) -> dict:
    """Remainder of ``f`` modulo monic ``reducers`` (complete reduction when ``full``)."""
    f = dict(f)
    rem: dict = {}
    neg_key = order.neg_key
    heap = [(neg_key(e), e) for e in f]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = f.pop(e, None)
        if c is None:
            continue
        for r in reducers:
            if r.divides(e):
                break
        else:
            rem[e] = c
            if not full:
                for e2, c2 in f.items():
                    rem[e2] = c2
                return rem
            continue
        q = tuple(map(_sub, e, r.lm))
        for ge, gc in r.tail:
            ne = tuple(map(_add, ge, q))
            v = f.get(ne)
            if v is None:
                f[ne] = -(c * gc)
                heapq.heappush(heap, (neg_key(ne), ne))
            else:
                v = v - c * gc
                if v.is_zero():
                    del f[ne]
                else:
                    f[ne] = v
    return rem


def _spoly(f: dict, lf: tuple, g: dict, lg: tuple) -> dict:
    m = _lcm(lf, lg)
    qf = tuple(map(_sub, m, lf))
    qg = tuple(map(_sub, m, lg))
    out = {tuple(map(_add, e, qf)): c for e, c in f.items()}
    for e, c in g.items():
        ne = tuple(map(_add, e, qg))
        v = out.get(ne)
        if v is None:
            out[ne] = -c
        else:
            v = v - c
            if v.is_zero():
                del out[ne]
            else:
                out[ne] = v
    return out


def buchberger(polys: Iterable[dict], order: TermOrder) -> list[dict]:
    """Reduced Groebner basis (monic, sorted by descending leading monomial).

    Pair handling follows the Gebauer-Moeller update, which implements the product
    and chain criteria; pairs are selected by the normal strategy.
    """
    basis: list[dict] = []
    leads: list[tuple] = []
    active: list[int] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: dict) -> None:
        h = _monic(h, order)
        lh = _lead(h, order)
        idx = len(basis)
        basis.append(h)
        leads.append(lh)
        nonlocal active, pairs
        cands = [(g, _lcm(leads[g], lh)) for g in active]
        kept = []
        for i, (g, m) in enumerate(cands):
            if _coprime(leads[g], lh):
                kept.append((g, m))
                continue
            dominated = False
            for j, (g2, l2) in enumerate(cands):
                if j != i and _divides(l2, m) and (l2 != m or j < i):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, m))
        new_pairs = {(g, idx) for g, m in kept if not _coprime(leads[g], lh)}
        survivors = set()
        for a, b in pairs:
            lab = _lcm(leads[a], leads[b])
            if (_divides(lh, lab) and _lcm(leads[a], lh) != lab and _lcm(leads[b], lh) != lab):
                continue
            survivors.add((a, b))
        pairs = survivors | new_pairs
        active = [g for g in active if not _divides(lh, leads[g])] + [idx]

    for p in polys:
        p = {e: c for e, c in p.items() if not c.is_zero()}
        if not p:
            continue
        reducers = [_Reducer(leads[g], basis[g]) for g in active]
        p = _reduce(p, reducers, order)
        if p:
            add(p)

    while pairs:
        a, b = min(pairs, key=lambda ab: (order.key(_lcm(leads[ab[0]], leads[ab[1]])), ab))
        pairs.discard((a, b))
        s = _spoly(basis[a], leads[a], basis[b], leads[b])
        if not s:
            continue
        reducers = [_Reducer(leads[g], basis[g]) for g in active]
        h = _reduce(s, reducers, order)
        if h:
            add(h)

    # minimal then reduced
    minimal = [g for g in active if not any(g2 != g and _divides(leads[g2], leads[g]) for g2 in active)]
    out = []
    for g in minimal:
        others = [_Reducer(leads[h], basis[h]) for h in minimal if h != g]
        out.append(_monic(_reduce(basis[g], others, order), order))
    out.sort(key=lambda f: order.key(_lead(f, order)), reverse=True)
    return out


# -- presented rings -----------------------------------------------------------------

MARK = "~"


@dataclass(frozen=True)
class _Affine:
    names: tuple[str, ...]
    n_laurent: int
    marker_of: dict  # laurent index -> affine marker index


def _affine_model(spec: RingSpec) -> _Affine:
    names = list(spec.names)
    marker_of = {}
    for j, (name, inv) in enumerate(spec.variables):
        if inv:
            marker_of[j] = len(names)
            names.append(name + MARK)
    return _Affine(tuple(names), len(spec.names), marker_of)


def default_blocks(spec: RingSpec, first: Sequence[str] = ()) -> list[list[str]]:
    """Elimination block ``first`` (if any), then polynomial variables, then units."""
    first = list(first)
    rest_poly = [n for n, inv in spec.variables if not inv and n not in first]
    rest_inv = [n for n, inv in spec.variables if inv and n not in first]
    return [b for b in (first, rest_poly, rest_inv) if b]


class PresentedRing:
    """``Q(i)[vars, units^±1] / (relations)`` with a cached reduced Groebner basis."""

    def __init__(
        self,
        spec: RingSpec,
        relations: Iterable[LaurentPoly | str] = (),
        blocks: Sequence[Sequence[str]] | None = None,
        name: str = "",
    ):
        self.spec = spec
        self.name = name
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = spec(r)
            if r.ring != spec:
                r = r.to_ring(spec)
            rels.append(r)
        self.relations = tuple(rels)
        self.blocks = [list(b) for b in (blocks or default_blocks(spec))]
        listed = [n for b in self.blocks for n in b]
        if sorted(listed) != sorted(spec.names):
            raise RingError("term-order blocks must list every variable exactly once")
        self._aff = _affine_model(spec)
        idx = {n: i for i, n in enumerate(self._aff.names)}
        aff_blocks = []
        for b in self.blocks:
            block = []
            for n in b:
                block.append(idx[n])
                if spec.is_invertible(n):
                    block.append(idx[n + MARK])
            aff_blocks.append(block)
        self.order = TermOrder(aff_blocks)
        gens = [self._to_affine(r) for r in self.relations]
        for j, m in self._aff.marker_of.items():
            e = [0] * len(self._aff.names)
            e[j] = 1
            e[m] = 1
            gens.append({tuple(e): ONE, (0,) * len(self._aff.names): -ONE})
        self._gb = buchberger(gens, self.order)
        self._reducers = [_Reducer(_lead(g, self.order), g) for g in self._gb]

    # conversions
    def _to_affine(self, p: LaurentPoly) -> dict:
        if p.ring != self.spec:
            p = p.to_ring(self.spec)
        marker_of = self._aff.marker_of
        if not marker_of:
            return dict(p.terms)
        n = len(self._aff.names)
        out = {}
        for e, c in p.terms.items():
            if any(k < 0 for k in e):
                a = list(e) + [0] * (n - len(e))
                for j, k in enumerate(e):
                    if k < 0:
                        a[j] = 0
                        a[marker_of[j]] = -k
                out[tuple(a)] = c
            else:
                out[e + (0,) * (n - len(e))] = c
        return out

    def _from_affine(self, f: dict) -> LaurentPoly:
        marker_of = self._aff.marker_of
        nl = self._aff.n_laurent
        if not marker_of:
            return LaurentPoly(self.spec, f, check=False)
        out = {}
        for e, c in f.items():
            lau = list(e[:nl])
            for j, m in marker_of.items():
                lau[j] -= e[m]
            key = tuple(lau)
            v = out.get(key)
            out[key] = c if v is None else v + c
        return LaurentPoly(self.spec, {e: c for e, c in out.items() if not c.is_zero()}, check=False)

    # public API
    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        rels = ", ".join(str(r) for r in self.relations)
        return f"PresentedRing({label}Q(i)[{self.spec.describe()}]/({rels}))"

    @property
    def names(self) -> tuple[str, ...]:
        return self.spec.names

    def var(self, name: str) -> LaurentPoly:
        return self.spec.var(name)

    def gens(self) -> tuple[LaurentPoly, ...]:
        return self.spec.gens()

    def __call__(self, text: str) -> LaurentPoly:
        return self.spec(text)

    def element(self, value) -> LaurentPoly:
        if isinstance(value, str):
            return self.spec(value)
        if isinstance(value, LaurentPoly):
            return value if value.ring == self.spec else value.to_ring(self.spec)
        return LaurentPoly.constant(self.spec, value)

    def groebner(self) -> list[LaurentPoly]:
        """Reduced basis of the affine model, shown in Laurent form."""
        return [self._from_affine(g) for g in self._gb]

    def normal_form(self, p: LaurentPoly | str) -> LaurentPoly:
        p = self.element(p)
        return self._from_affine(_reduce(self._to_affine(p), self._reducers, self.order))

    nf = normal_form

    def is_zero(self, p) -> bool:
        p = self.element(p)
        if p.is_zero():
            return True
        return not _reduce(self._to_affine(p), self._reducers, self.order)

    def equal(self, a, b) -> bool:
        return self.is_zero(self.element(a) - self.element(b))

    def is_unit_ideal(self) -> bool:
        return any(not any(_lead(g, self.order)) for g in self._gb)

    def ideal_member(self, p, extra: Iterable = ()) -> bool:
        """``p`` in (relations) + (extra)."""
        extra = [self.element(g) for g in extra]
        if not extra:
            return self.is_zero(p)
        return self.with_relations(extra).is_zero(p)

    def with_relations(self, extra: Iterable, name: str = "") -> PresentedRing:
        extra = [self.element(g) for g in extra]
        return PresentedRing(self.spec, list(self.relations) + extra, self.blocks, name=name or self.name)

    def contains_one(self, extra: Iterable = ()) -> bool:
        return self.ideal_member(self.spec.one(), extra)

    def radical_member(self, p, extra: Iterable = ()) -> bool:
        """Rabinowitsch: ``p`` is in the radical iff ``1 in I + (1 - tau*p)`` for a fresh ``tau``."""
        p = self.element(p)
        tau = "tau_"
        while tau in self.spec.names:
            tau += "_"
        big = self.adjoin(tau)
        gens = [big.element(g.to_ring(big.spec)) for g in (self.element(g) for g in extra)]
        gens.append(big.spec.one() - big.var(tau) * p.to_ring(big.spec))
        return big.contains_one(gens)

    def adjoin(self, *names: str, invertible: bool = False, name: str = "") -> PresentedRing:
        """Polynomial (or Laurent) extension by fresh variables, e.g. ``B[w]``."""
        spec = self.spec.extend(*names, invertible=invertible)
        blocks = [list(b) for b in self.blocks]
        if invertible:
            blocks.append(list(names))
        else:
            poly_block = next((b for b in blocks if b and not self.spec.is_invertible(b[0])), None)
            if poly_block is None:
                blocks.insert(0, list(names))
            else:
                poly_block.extend(names)
        rels = [r.to_ring(spec) for r in self.relations]
        return PresentedRing(spec, rels, blocks, name=name)

    def reorder(self, blocks: Sequence[Sequence[str]]) -> PresentedRing:
        return PresentedRing(self.spec, self.relations, blocks, name=self.name)

    def eliminate(self, names: Sequence[str]) -> list[LaurentPoly]:
        """Basis elements free of ``names`` (and their markers): generators of the
        elimination ideal in the remaining variables."""
        ring = self if self.blocks[0] == list(names) and names else self.reorder(default_blocks(self.spec, names))
        idx = [ring.spec.index(n) for n in names]
        out = []
        for g in ring.groebner():
            if all(all(e[i] == 0 for i in idx) for e in g.terms):
                out.append(g)
        return out

    def describe(self) -> dict:
        return {
            "variables": [[n, inv] for n, inv in self.spec.variables],
            "relations": [str(r) for r in self.relations],
            "order": self.blocks,
        }

    @classmethod
    def from_description(cls, data: dict) -> PresentedRing:
        spec = RingSpec([(n, bool(inv)) for n, inv in data["variables"]])
        return cls(spec, [spec(r) for r in data["relations"]], data.get("order"))

    def standard_monomial(self, e: tuple) -> bool:
        """Whether the Laurent monomial ``e`` is in normal form."""
        a = self._to_affine(LaurentPoly(self.spec, {e: ONE}, check=False))
        (ae,) = a.keys()
        return not any(r.divides(ae) for r in self._reducers)


def groebner_basis(polys: Sequence[LaurentPoly], blocks: Sequence[Sequence[str]] | None = None) -> list[LaurentPoly]:
    """Reduced Groebner basis of polynomials in a ring without invertible variables.

    ``blocks`` defaults to graded reverse lex over the ring's variable order.
    """
    if not polys:
        return []
    spec = polys[0].ring
    if any(spec.invertible):
        raise RingError("use PresentedRing for Laurent rings")
    blocks = blocks or [list(spec.names)]
    idx = {n: i for i, n in enumerate(spec.names)}
    order = TermOrder([[idx[n] for n in b] for b in blocks])
    gb = buchberger([dict(p.terms) for p in polys], order)
    return [LaurentPoly(spec, g, check=False) for g in gb]


def normal_form(p: LaurentPoly, ring: PresentedRing) -> LaurentPoly:
    return ring.normal_form(p)


def ideal_member(p: LaurentPoly, ring: PresentedRing, extra: Iterable = ()) -> bool:
    return ring.ideal_member(p, extra)


def radical_member(p: LaurentPoly, ring: PresentedRing, extra: Iterable = ()) -> bool:
    return ring.radical_member(p, extra)


def eliminate(ring: PresentedRing, names: Sequence[str]) -> list[LaurentPoly]:
    return ring.eliminate(names)


@dataclass(frozen=True)
class IrreducibilityCertificate:
    verdict: str  # "irreducible" | "reducible" | "inconclusive"
    var: str
    leading: LaurentPoly
    constant: LaurentPoly
    reason: str
    witnesses: tuple = ()

    @property
    def irreducible(self) -> bool:
        return self.verdict == "irreducible"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "var": self.var,
            "leading": str(self.leading),
            "constant": str(self.constant),
            "reason": self.reason,
            "witnesses": list(self.witnesses),
        }


def irreducible_linear_in(p: LaurentPoly, var: str) -> IrreducibilityCertificate:
    """Certificate that ``p = a*var + b`` (``a``, ``b`` free of ``var``) is irreducible.

    ``p`` is irreducible iff ``gcd(a, b)`` is a unit. Two sufficient tests:
    ``1 in (a, b)``; or ``a`` a monomial and no non-unit variable of ``a`` divides ``b``
    (checked by ``b|_{v=0} != 0``). Never reports a false "irreducible".
    """
    parts = p.coefficient_in(var)
    if set(parts) - {0, 1} or 1 not in parts:
        raise RingError(f"polynomial is not of degree 1 in {var!r}")
    a = parts[1]
    b = parts.get(0, p.ring.zero())
    ring = p.ring
    if b.is_zero():
        if a.is_constant() or (a.is_monomial() and _unit_monomial(ring, a)):
            return IrreducibilityCertificate("irreducible", var, a, b, "unit multiple of the variable")
        return IrreducibilityCertificate("reducible", var, a, b, "constant part vanishes; p = var * a")
    if a.is_monomial():
        (e, _), = a.terms.items()
        witnesses = []
        for name, k, inv in zip(ring.names, e, ring.invertible):
            if k > 0 and not inv:
                restricted = b.coefficient_in(name).get(0, ring.zero())
                if restricted.is_zero():
                    return IrreducibilityCertificate(
                        "reducible", var, a, b, f"{name} divides both coefficients", (name,)
                    )
                witnesses.append(f"{b} mod {name} = {restricted}")
        return IrreducibilityCertificate(
            "irreducible", var, a, b, "leading coefficient is a monomial coprime to the constant part",
            tuple(witnesses),
        )
    pr = PresentedRing(ring, [a, b])
    if pr.contains_one():
        return IrreducibilityCertificate("irreducible", var, a, b, "1 lies in the ideal (a, b)")
    return IrreducibilityCertificate("inconclusive", var, a, b, "no certificate found")


def _unit_monomial(ring: RingSpec, a: LaurentPoly) -> bool:
    (e, _), = a.terms.items()
    return all(k == 0 or inv for k, inv in zip(e, ring.invertible))
