"""Sparse multivariate Laurent polynomials over Q(i)."""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .exact import ONE, ZERO, GaussianRational

Monomial = tuple  # tuple[int, ...] aligned with a RingSpec


class RingError(ValueError):
    """Ring mismatch, unknown variable, or an exponent that breaks invertibility flags."""


@dataclass(frozen=True)
class RingSpec:
    """Ordered variable alphabet; each variable is either polynomial or invertible."""

    names: tuple[str, ...]
    invertible: tuple[bool, ...]

    def __init__(self, variables: Iterable):
        names, inv = [], []
        for v in variables:
            if isinstance(v, str):
                name, flag = v, False
            else:
                name, flag = v
            names.append(name)
            inv.append(bool(flag))
        if len(set(names)) != len(names):
            raise RingError(f"duplicate variable names in {names}")
        for name in names:
            if not name.isidentifier() or name == "i":
                raise RingError(f"invalid variable name {name!r}")
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "invertible", tuple(inv))

    @classmethod
    def parse(cls, text: str) -> RingSpec:
        """``"x, y, z, t^±1"`` (``t^-1`` and ``t^+-1`` also mark invertibility)."""
        out = []
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            for suffix in ("^±1", "^+-1", "^-1", "^±"):
                if item.endswith(suffix):
                    out.append((item[: -len(suffix)].strip(), True))
                    break
            else:
                out.append((item, False))
        return cls(out)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise RingError(f"unknown variable {name!r}") from None

    def is_invertible(self, name: str) -> bool:
        return self.invertible[self.index(name)]

    @property
    def variables(self) -> tuple[tuple[str, bool], ...]:
        return tuple(zip(self.names, self.invertible))

    def extend(self, *names: str, invertible: bool = False) -> RingSpec:
        return RingSpec(list(self.variables) + [(n, invertible) for n in names])

    def localize(self, *names: str) -> RingSpec:
        for n in names:
            self.index(n)
        return RingSpec([(n, f or n in names) for n, f in self.variables])

    def describe(self) -> str:
        return ", ".join(n + ("^±1" if f else "") for n, f in self.variables)

    def zero(self) -> LaurentPoly:
        return LaurentPoly(self, {})

    def one(self) -> LaurentPoly:
        return LaurentPoly.constant(self, ONE)

    def var(self, name: str) -> LaurentPoly:
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return LaurentPoly(self, {tuple(e): ONE})

    def gens(self) -> tuple[LaurentPoly, ...]:
        return tuple(self.var(n) for n in self.names)

    def __call__(self, text: str) -> LaurentPoly:
        from .parse import parse_poly

        return parse_poly(text, self)


def _check_monomial(ring: RingSpec, e: Monomial) -> None:
    for k, flag in zip(e, ring.invertible):
        if k < 0 and not flag:
            raise RingError("negative exponent on a non-invertible variable")


class LaurentPoly:
    """Immutable sparse Laurent polynomial: ``{exponent tuple: nonzero coefficient}``."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping, *, check: bool = True):
        if check:
            clean = {}
            n = len(ring)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise RingError("exponent vector length does not match ring")
                c = GaussianRational.coerce(c)
                if not c.is_zero():
                    _check_monomial(ring, e)
                    clean[e] = c
            terms = clean
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def constant(cls, ring: RingSpec, c) -> LaurentPoly:
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return cls(ring, {}, check=False)
        return cls(ring, {(0,) * len(ring): c}, check=False)

    @classmethod
    def monomial(cls, ring: RingSpec, exps: Mapping[str, int] | Sequence[int], c=ONE) -> LaurentPoly:
        if isinstance(exps, Mapping):
            e = [0] * len(ring)
            for name, k in exps.items():
                e[ring.index(name)] = k
            exps = e
        return cls(ring, {tuple(exps): c})

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: [{self.ring.describe()}] vs [{other.ring.describe()}]")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return LaurentPoly.constant(self.ring, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * len(self.ring), ZERO)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other):
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[e]
                else:
                    out[e] = v
        return LaurentPoly(self.ring, out, check=False)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, {e: -c for e, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> LaurentPoly:
        c = GaussianRational.coerce(c)
        if c.is_zero():
            return self.ring.zero()
        return LaurentPoly(self.ring, {e: v * c for e, v in self.terms.items()}, check=False)

    def shift(self, e: Monomial) -> LaurentPoly:
        """Multiply by the monomial with exponent vector ``e``."""
        add = operator.add
        out = {tuple(map(add, k, e)): c for k, c in self.terms.items()}
        if out:
            _check_monomial(self.ring, next(iter(out)))
            for k in out:
                _check_monomial(self.ring, k)
        return LaurentPoly(self.ring, out, check=False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        add = operator.add
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return LaurentPoly(self.ring, {e: c for e, c in out.items() if not c.is_zero()}, check=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self.terms) != 1:
                raise RingError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            _check_monomial(self.ring, tuple(-k for k in e))
            inv = LaurentPoly(self.ring, {tuple(-k for k in e): c.inverse()}, check=False)
            return inv ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(GaussianRational.coerce(other).inverse())
        other = self._coerce(other)
        if len(other.terms) != 1:
            raise RingError("division only by monomials; use a presented ring for quotients")
        return self * other ** -1

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.terms == LaurentPoly.constant(self.ring, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        from .parse import print_poly

        return print_poly(self)

    def sorted_terms(self) -> list[tuple[Monomial, GaussianRational]]:
        """Terms in descending graded-reverse-lexicographic order (deterministic)."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def degree(self, var: str) -> int:
        j = self.ring.index(var)
        return max((e[j] for e in self.terms), default=0)

    def min_degree(self, var: str) -> int:
        j = self.ring.index(var)
        return min((e[j] for e in self.terms), default=0)

    def abs_degree(self) -> int:
        """Total degree with every exponent counted by absolute value."""
        return max((sum(abs(k) for k in e) for e in self.terms), default=0)

    def support(self) -> set[str]:
        used = set()
        for e in self.terms:
            for name, k in zip(self.ring.names, e):
                if k:
                    used.add(name)
        return used

    def coefficient_in(self, var: str) -> dict[int, LaurentPoly]:
        """Split by powers of ``var``: ``{k: coefficient polynomial (var-free)}``."""
        j = self.ring.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[j]
            e2 = e[:j] + (0,) + e[j + 1:]
            out.setdefault(k, {})[e2] = c
        return {k: LaurentPoly(self.ring, t, check=False) for k, t in out.items()}

    def to_ring(self, ring: RingSpec) -> LaurentPoly:
        """Re-express in a ring containing every variable this polynomial uses (by name)."""
        if ring == self.ring:
            return self
        pos = []
        for j, name in enumerate(self.ring.names):
            pos.append(ring.names.index(name) if name in ring.names else None)
        out = {}
        n = len(ring)
        for e, c in self.terms.items():
            e2 = [0] * n
            for j, k in enumerate(e):
                if k:
                    if pos[j] is None:
                        raise RingError(f"variable {self.ring.names[j]!r} not in target ring")
                    e2[pos[j]] = k
            out[tuple(e2)] = c
        return LaurentPoly(ring, out)

    def map_coefficients(self, f: Callable[[GaussianRational], GaussianRational]) -> LaurentPoly:
        return LaurentPoly(self.ring, {e: f(c) for e, c in self.terms.items()})

    def monic_content(self) -> GaussianRational:
        """Leading coefficient in descending grevlex order (used for normalization)."""
        if not self.terms:
            return ZERO
        return self.sorted_terms()[0][1]


def grevlex_key(e: Monomial) -> tuple:
    return (sum(e), tuple(-k for k in reversed(e)))


def partial_derivative(p: LaurentPoly, var: str) -> LaurentPoly:
    """Formal derivative; negative exponents follow the power rule."""
    j = p.ring.index(var)
    out = {}
    for e, c in p.terms.items():
        k = e[j]
        if k:
            out[e[:j] + (k - 1,) + e[j + 1:]] = c * k
    return LaurentPoly(p.ring, out, check=False)


def pole_order(p: LaurentPoly, var: str) -> int:
    """Negated minimum exponent of ``var`` (0 when regular in ``var``; 0 for the zero polynomial)."""
    return max(0, -p.min_degree(var))


def substitute(
    p: LaurentPoly,
    images: Mapping[str, LaurentPoly],
    target: RingSpec | None = None,
    inverses: Mapping[str, LaurentPoly] | None = None,
    reduce: Callable[[LaurentPoly], LaurentPoly] | None = None,
) -> LaurentPoly:
    """Ring-homomorphic evaluation ``p(images)``.

    Negative powers of an invertible variable use ``inverses[var]`` when given, else the
    image must be a unit monomial of the target. ``reduce`` (typically a normal form) is
    applied to cached powers and partial products to contain expression swell.
    """
    src = p.ring
    if target is None:
        target = next(iter(images.values())).ring if images else src
    imgs = []
    for name in src.names:
        if name in images:
            img = images[name]
            if isinstance(img, LaurentPoly):
                if img.ring != target:
                    img = img.to_ring(target)
            else:
                img = LaurentPoly.constant(target, img)
            imgs.append(img)
        else:
            imgs.append(None)
    used = set()
    for e in p.terms:
        for j, k in enumerate(e):
            if k:
                used.add(j)
    for j in used:
        if imgs[j] is None:
            raise RingError(f"no image given for variable {src.names[j]!r}")
    red = reduce or (lambda q: q)
    cache: dict[tuple[int, int], LaurentPoly] = {}

    def power(j: int, k: int) -> LaurentPoly:
        key = (j, k)
        if key in cache:
            return cache[key]
        if k == 0:
            val = target.one()
        elif k == 1:
            val = imgs[j]
        elif k == -1:
            name = src.names[j]
            if inverses and name in inverses:
                val = inverses[name].to_ring(target) if inverses[name].ring != target else inverses[name]
            elif len(imgs[j].terms) == 1:
                val = imgs[j] ** -1
            else:
                raise RingError(f"image of invertible {name!r} is not a unit monomial; supply an inverse")
        elif k > 0:
            val = red(power(j, k // 2) * power(j, k - k // 2))
        else:
            val = red(power(j, k // 2 + (k % 2)) * power(j, k - (k // 2 + (k % 2))))
        cache[key] = val
        return val

    # group terms by their leading variables to share partial products
    result = target.zero()
    partial: dict[tuple, LaurentPoly] = {}
    nvars = len(src)
    for e, c in p.terms.items():
        acc_key: tuple = ()
        acc = target.one()
        for j in range(nvars):
            acc_key = acc_key + (e[j],)
            if e[j] == 0:
                partial.setdefault(acc_key, acc)
                continue
            if acc_key in partial:
                acc = partial[acc_key]
            else:
                acc = red(acc * power(j, e[j]))
                partial[acc_key] = acc
        result = result + acc.scale(c)
    return red(result)
