"""Declarative check lists.

One statement per line; ``#`` starts a comment::

    ring A = Q(i)[x, y, z, t] / (x + x^2*y + z^2 + t^3)
    derivation d1 on A: z -> x^2, y -> -2*z
    morphism phi: A -> B: x -> -x, y -> z, z -> i*y, t -> t
    check well-defined d1
    check lnd d1 cap 32
    check kernel d1 contains x, t
    check kernel-bounded d1, d2 degree 3 equals 1, x, x^2, x^3
    check morphism phi
    check inverse phi psi
    check equivariant phi: d_src, d_tgt
    check equal A: x*z = y^2 - t^3
    check member A: p in g1, g2
    check radical A: p in g1, g2
    check unit-ideal A: g1, g2
    check irreducible A: x^2*z - y^2 in z
    check pole-order A: x^-2 + 1 in x = 2

A morphism may list unit witnesses after ``|``: ``t -> mu^2 | t -> mu^-2``.
"""

from __future__ import annotations

import re
from time import perf_counter

from .derivation import (Derivation, NilpotencyCertificate, kernel_intersection_bounded, lnd_certify, span_equal,
                         well_defined)
from .geometry import RingMorphism, check_equivariance, check_inverse_pair, check_morphism
from .ideal import PresentedRing, irreducible_linear_in
from .poly import RingSpec, pole_order
from .report import INCONCLUSIVE, REFUTED, VERIFIED, ClaimResult, Report


class CheckFileError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def split_top(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return [p for p in out if p]


def _assignments(text: str) -> dict[str, str]:
    out = {}
    for item in split_top(text):
        if "->" not in item:
            raise ValueError(f"expected 'var -> expr', got {item!r}")
        k, v = item.split("->", 1)
        out[k.strip()] = v.strip()
    return out


_RING = re.compile(r"^ring\s+(\S+)\s*=\s*Q\(i\)\s*\[(.*?)\]\s*(?:/\s*\((.*)\))?\s*$")
_DER = re.compile(r"^derivation\s+(\S+)\s+on\s+(\S+)\s*:\s*(.*)$")
_MOR = re.compile(r"^morphism\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*:\s*(.*)$")


def ok(flag: bool, **detail) -> tuple[str, dict]:
    return (VERIFIED if flag else REFUTED), detail


class CheckFile:
    def __init__(self):
        self.rings: dict[str, PresentedRing] = {}
        self.derivations: dict[str, Derivation] = {}
        self.morphisms: dict[str, RingMorphism] = {}
        self.claims: list[ClaimResult] = []
        self.definitions: list[str] = []

    def _ring(self, name: str, line: int) -> PresentedRing:
        if name not in self.rings:
            raise CheckFileError(f"unknown ring {name!r}", line)
        return self.rings[name]

    def _der(self, name: str, line: int) -> Derivation:
        if name not in self.derivations:
            raise CheckFileError(f"unknown derivation {name!r}", line)
        return self.derivations[name]

    def _mor(self, name: str, line: int) -> RingMorphism:
        if name not in self.morphisms:
            raise CheckFileError(f"unknown morphism {name!r}", line)
        return self.morphisms[name]

    def run(self, text: str) -> Report:
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                self._statement(line, n)
            except CheckFileError:
                raise
            except ValueError as exc:
                raise CheckFileError(str(exc), n) from None
        return Report("check-file", self.claims)

    def _statement(self, line: str, n: int) -> None:
        if line.startswith("ring "):
            m = _RING.match(line)
            if not m:
                raise CheckFileError("malformed ring definition", n)
            spec = RingSpec.parse(m.group(2))
            rels = split_top(m.group(3) or "")
            self.rings[m.group(1)] = PresentedRing(spec, [spec(r) for r in rels], name=m.group(1))
        elif line.startswith("derivation "):
            m = _DER.match(line)
            if not m:
                raise CheckFileError("malformed derivation definition", n)
            R = self._ring(m.group(2), n)
            self.derivations[m.group(1)] = Derivation(R, _assignments(m.group(3)), name=m.group(1))
        elif line.startswith("morphism "):
            m = _MOR.match(line)
            if not m:
                raise CheckFileError("malformed morphism definition", n)
            src, tgt = self._ring(m.group(2), n), self._ring(m.group(3), n)
            body, _, wit = m.group(4).partition("|")
            self.morphisms[m.group(1)] = RingMorphism(src, tgt, _assignments(body),
                                                      _assignments(wit) if wit.strip() else None, name=m.group(1))
        elif line.startswith("check "):
            t0 = perf_counter()
            status, detail = self._check(line[6:].strip(), n)
            ms = round((perf_counter() - t0) * 1000, 3)
            if status == VERIFIED:
                detail = {**detail, "certificates": [
                    {"kind": "check_line", "definitions": list(self.definitions), "check": line}]}
            self.claims.append(ClaimResult(f"line-{n}", line, status, "", detail, ms))
        else:
            raise CheckFileError(f"unknown statement {line.split()[0]!r}", n)
        if not line.startswith("check "):
            self.definitions.append(line)

    def _check(self, body: str, n: int) -> tuple[str, dict]:
        kind, _, rest = body.partition(" ")
        rest = rest.strip()
        if kind == "well-defined":
            D = self._der(rest, n)
            return ok(well_defined(D))
        if kind == "lnd":
            name, _, cap = rest.partition(" cap ")
            D = self._der(name.strip(), n)
            if not well_defined(D):
                return REFUTED, {"error": "not well defined"}
            cert = lnd_certify(D, int(cap) if cap.strip() else 64)
            if isinstance(cert, NilpotencyCertificate):
                return VERIFIED, cert.as_dict()
            return INCONCLUSIVE, cert.as_dict()
        if kind == "kernel":
            name, _, elems = rest.partition(" contains ")
            D = self._der(name.strip(), n)
            bad = [e for e in split_top(elems) if not D.apply(D.ring(e)).is_zero()]
            return ok(not bad, outside=bad)
        if kind == "kernel-bounded":
            m = re.match(r"^(.*?)\s+degree\s+(\d+)\s+equals\s+(.*)$", rest)
            if not m:
                raise CheckFileError("expected 'kernel-bounded D1, D2 degree N equals p1, p2'", n)
            Ds = [self._der(x, n) for x in split_top(m.group(1))]
            basis = kernel_intersection_bounded(Ds, int(m.group(2)))
            R = Ds[0].ring
            return ok(span_equal(basis, [R(p) for p in split_top(m.group(3))]),
                      basis=[str(p) for p in basis])
        if kind == "morphism":
            res = check_morphism(self._mor(rest, n))
            return ok(res.ok, failures=res.failures)
        if kind == "inverse":
            a, b = rest.split()
            res = check_inverse_pair(self._mor(a, n), self._mor(b, n))
            return ok(res.ok, failures=res.failures)
        if kind == "equivariant":
            name, _, ders = rest.partition(":")
            M = self._mor(name.strip(), n)
            ds, dt = [self._der(x, n) for x in split_top(ders)]
            cs, ct = lnd_certify(ds), lnd_certify(dt)
            if not isinstance(cs, NilpotencyCertificate) or not isinstance(ct, NilpotencyCertificate):
                return INCONCLUSIVE, {"error": "actions not certified locally nilpotent"}
            res = check_equivariance(M, ds, dt, cs, ct)
            return ok(res.ok, failures=res.failures)
        name, _, expr = rest.partition(":")
        R = self._ring(name.strip(), n)
        expr = expr.strip()
        if kind == "equal":
            lhs, _, rhs = expr.partition("=")
            return ok(R.equal(R(lhs), R(rhs)))
        if kind == "zero":
            return ok(R.is_zero(R(expr)))
        if kind in ("member", "radical"):
            p, _, gens = expr.partition(" in ")
            extra = [R(g) for g in split_top(gens)]
            flag = R.ideal_member(R(p), extra) if kind == "member" else R.radical_member(R(p), extra)
            return ok(flag)
        if kind == "unit-ideal":
            return ok(R.contains_one([R(g) for g in split_top(expr)]))
        if kind == "irreducible":
            p, _, var = expr.rpartition(" in ")
            cert = irreducible_linear_in(R(p), var.strip())
            status = {"irreducible": VERIFIED, "reducible": REFUTED}.get(cert.verdict, INCONCLUSIVE)
            return status, cert.as_dict()
        if kind == "pole-order":
            m = re.match(r"^(.*)\s+in\s+(\w+)\s*=\s*(\d+)$", expr)
            if not m:
                raise CheckFileError("expected 'pole-order R: expr in var = N'", n)
            var = m.group(2)
            loc_spec = R.spec.localize(var)
            loc = PresentedRing(loc_spec, [r.to_ring(loc_spec) for r in R.relations])
            got = pole_order(loc.normal_form(loc_spec(m.group(1))), var)
            return ok(got == int(m.group(3)), pole_order=got)
        raise CheckFileError(f"unknown check {kind!r}", n)


def run_check_file(text: str) -> Report:
    return CheckFile().run(text)
