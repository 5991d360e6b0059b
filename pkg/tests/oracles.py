"""Independent sympy computations used as test oracles."""

from __future__ import annotations

import itertools

import sympy

X, Y, Z, T_ = sympy.symbols("x y z t")
KR = X + X ** 2 * Y + Z ** 2 + T_ ** 3


def sympy_joint_kernel_dimension(degree: int) -> int:
    """Joint kernel dimension of d1, d2 on the cubic threefold ring in degree <= ``degree``.

    Works in the span of monomials not divisible by the grevlex leading term x^2*y,
    reduces images with sympy and takes the rank.
    """
    monos = [e for e in itertools.product(range(degree + 1), repeat=4)
             if sum(e) <= degree and not (e[0] >= 2 and e[1] >= 1)]
    vecs = [X ** e[0] * Y ** e[1] * Z ** e[2] * T_ ** e[3] for e in monos]
    derivs = [{Z: X ** 2, Y: -2 * Z}, {T_: X ** 2, Y: -3 * T_ ** 2}]
    columns = []
    for m in vecs:
        col = {}
        for k, images in enumerate(derivs):
            img = sum(sympy.diff(m, v) * w for v, w in images.items())
            _, rem = sympy.reduced(sympy.expand(img), [KR], X, Y, Z, T_, order="grevlex")
            for term, c in sympy.Poly(rem, X, Y, Z, T_).terms():
                col[(k, term)] = c
        columns.append(col)
    keys = sorted({key for col in columns for key in col})
    M = sympy.Matrix([[col.get(key, 0) for col in columns] for key in keys]) if keys else sympy.zeros(0, len(vecs))
    return len(vecs) - M.rank()
