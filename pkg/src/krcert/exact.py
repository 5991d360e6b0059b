"""Exact arithmetic over the Gaussian rationals Q(i) and exact linear solving."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class ExactArithmeticError(ArithmeticError):
    """Raised for division by zero and malformed scalar literals."""


class GaussianRational:
    """An element ``(a + b*i) / d`` of Q(i) with ``gcd(a, b, d) = 1`` and ``d > 0``.

    Instances are immutable and canonical, so ``==`` and ``hash`` are structural.
    """

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction = 0):
        if isinstance(re, str):
            z = GaussianRational.parse(re)
            self._a, self._b, self._d = z._a, z._b, z._d
            return
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        g = gcd(a, b, d)
        self._a, self._b, self._d = a // g, b // g, d // g

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> GaussianRational:
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        z = object.__new__(cls)
        z._a, z._b, z._d = a, b, d
        return z

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 1)
        if isinstance(value, Fraction):
            return cls._raw(value.numerator, 0, value.denominator)
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")

    _TERM = re.compile(r"([+-])(\d+(?:/\d+)?)?(\*?i)?")

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse a scalar literal such as ``3``, ``-1/2``, ``i``, ``-3/4*i`` or ``(1/2 - 2*i)``."""
        body = "".join(text.split())
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        if not body:
            raise ExactArithmeticError(f"malformed scalar literal {text!r}")
        if body[0] not in "+-":
            body = "+" + body
        re_, im_, pos, seen = Fraction(0), Fraction(0), 0, set()
        while pos < len(body):
            m = cls._TERM.match(body, pos)
            if not m or m.end() == pos + 1 or (m.group(2) is None and (m.group(3) or "").startswith("*")):
                raise ExactArithmeticError(f"malformed scalar literal {text!r}")
            num, den = (m.group(2) or "1").partition("/")[::2]
            if den and int(den) == 0:
                raise ExactArithmeticError(f"zero denominator in {text!r}")
            value = Fraction(int(num), int(den or 1)) * (-1 if m.group(1) == "-" else 1)
            part = "im" if m.group(3) else "re"
            if part in seen:
                raise ExactArithmeticError(f"malformed scalar literal {text!r}")
            seen.add(part)
            if part == "im":
                im_ = value
            else:
                re_ = value
            pos = m.end()
        return cls(re_, im_)

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_one(self) -> bool:
        return self._a == 1 and self._b == 0 and self._d == 1

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussianRational.coerce(other)
        d1, d2 = self._d, other._d
        if d1 == d2:
            return GaussianRational._raw(self._a + other._a, self._b + other._b, d1)
        return GaussianRational._raw(
            self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        z = object.__new__(GaussianRational)
        z._a, z._b, z._d = -self._a, -self._b, self._d
        return z

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussianRational.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussianRational.coerce(other)
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        if b1 == 0 and b2 == 0:
            return GaussianRational._raw(a1 * a2, 0, self._d * other._d)
        return GaussianRational._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ExactArithmeticError("inverse of zero")
        # 1 / ((a + bi)/d) = d (a - bi) / (a^2 + b^2)
        return GaussianRational._raw(d * a, -d * b, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussianRational.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self):
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_scalar(self)


def _fraction_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Canonical literal text: ``3``, ``-1/2``, ``i``, ``-1/2*i``, ``(1+2*i)``."""
    re_, im_ = z.re, z.im
    if im_ == 0:
        return _fraction_text(re_)
    if im_ == 1:
        imag = "i"
    elif im_ == -1:
        imag = "-i"
    else:
        imag = f"{_fraction_text(im_)}*i"
    if re_ == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"({_fraction_text(re_)}{sign}{imag})"


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


def field_op(op: str, a: GaussianRational, b: GaussianRational | None = None) -> GaussianRational:
    """Dispatch ``add``, ``sub``, ``mul``, ``div``, ``neg`` or ``inv`` by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


@dataclass(frozen=True)
class LinearSystem:
    """``matrix @ x = rhs`` over Q(i); the matrix may be given dense or as sparse rows."""

    matrix: tuple
    rhs: tuple
    ncols: int

    def __init__(self, matrix: Sequence, rhs: Sequence | None = None, ncols: int | None = None):
        rows = []
        for row in matrix:
            if isinstance(row, dict):
                rows.append({j: GaussianRational.coerce(c) for j, c in row.items() if c})
            else:
                rows.append(tuple(GaussianRational.coerce(c) for c in row))
        if ncols is None:
            dense = [r for r in rows if not isinstance(r, dict)]
            if dense:
                ncols = len(dense[0])
            else:
                ncols = 1 + max((max(r) for r in rows if r), default=-1)
        for r in rows:
            if not isinstance(r, dict) and len(r) != ncols:
                raise ValueError("matrix is not rectangular")
            if isinstance(r, dict) and any(not 0 <= j < ncols for j in r):
                raise ValueError("sparse row index out of range")
        if rhs is None:
            rhs = [ZERO] * len(rows)
        if len(rhs) != len(rows):
            raise ValueError("rhs length does not match row count")
        object.__setattr__(self, "matrix", tuple(rows))
        object.__setattr__(self, "rhs", tuple(GaussianRational.coerce(c) for c in rhs))
        object.__setattr__(self, "ncols", ncols)

    def sparse_rows(self) -> list[dict[int, GaussianRational]]:
        out = []
        for r in self.matrix:
            if isinstance(r, dict):
                out.append(dict(r))
            else:
                out.append({j: c for j, c in enumerate(r) if c})
        return out

    def apply(self, x: Sequence[GaussianRational]) -> list[GaussianRational]:
        out = []
        for r in self.sparse_rows():
            acc = ZERO
            for j, c in r.items():
                acc = acc + c * x[j]
            out.append(acc)
        return out


@dataclass(frozen=True)
class SolutionSet:
    consistent: bool
    solution: tuple = ()
    nullspace: tuple = field(default=())

    @property
    def rank_deficiency(self) -> int:
        return len(self.nullspace)


def solve_linear(system: LinearSystem) -> SolutionSet:
    """Exact Gauss-Jordan elimination; returns one solution plus a nullspace basis.

    Pivots are the first nonzero entry in column order. The particular solution sets
    every free variable to zero. Results are checked by substitution before returning.
    """
    n = system.ncols
    rows = system.sparse_rows()
    rhs = list(system.rhs)
    pivots: dict[int, tuple[dict[int, GaussianRational], GaussianRational]] = {}
    for row, b in zip(rows, rhs):
        # pivot rows are kept fully reduced, so one pass clears every pivot column
        row = dict(row)
        for j in [j for j in row if j in pivots]:
            prow, pb = pivots[j]
            c = row[j]
            for k, v in prow.items():
                nv = row.get(k, ZERO) - c * v
                if nv.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = nv
            b = b - c * pb
        if not row:
            if not b.is_zero():
                return SolutionSet(False)
            continue
        j = min(row)
        inv = row[j].inverse()
        row = {k: v * inv for k, v in row.items()}
        b = b * inv
        # back-eliminate the new pivot column from earlier pivot rows
        for pj, (prow, pb) in list(pivots.items()):
            c = prow.get(j)
            if c is not None:
                for k, v in row.items():
                    nv = prow.get(k, ZERO) - c * v
                    if nv.is_zero():
                        prow.pop(k, None)
                    else:
                        prow[k] = nv
                pivots[pj] = (prow, pb - c * b)
        pivots[j] = (row, b)

    solution = [ZERO] * n
    for j, (prow, pb) in pivots.items():
        solution[j] = pb
    free = [j for j in range(n) if j not in pivots]
    nullspace = []
    for f in free:
        vec = [ZERO] * n
        vec[f] = ONE
        for j, (prow, _) in pivots.items():
            c = prow.get(f)
            if c is not None:
                vec[j] = -c
        nullspace.append(tuple(vec))

    if any(a != b for a, b in zip(system.apply(solution), system.rhs)):
        raise ExactArithmeticError("back-substitution check failed")
    for vec in nullspace:
        if any(not a.is_zero() for a in system.apply(vec)):
            raise ExactArithmeticError("nullspace check failed")
    return SolutionSet(True, tuple(solution), tuple(nullspace))


def as_gaussian_vector(values: Iterable) -> tuple[GaussianRational, ...]:
    return tuple(GaussianRational.coerce(v) for v in values)
