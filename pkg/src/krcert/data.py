"""Built-in rings, derivations, trivializations and cocycles for the pipelines."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .derivation import Derivation
from .geometry import (Ansatz, Cocycle, DoubleCover, GaChart, RingFraction, RingMorphism, compose,
                       fiber_coordinate_reps)
from .ideal import PresentedRing
from .poly import RingSpec

KR_EQUATION = "x + x^2*y + z^2 + t^3"
KR_REWRITTEN = "x^2*z - y^2 - x + t^3"
COORDINATE_CHANGE = {"x": "-x", "y": "z", "z": "i*y", "t": "t"}
COORDINATE_CHANGE_INVERSE = {"x": "-x", "y": "-i*z", "z": "y", "t": "t"}


def ring(spec: str, *relations: str, name: str = "") -> PresentedRing:
    s = RingSpec.parse(spec)
    return PresentedRing(s, [s(r) for r in relations], name=name)


@dataclass
class Bundle:
    """One side of the cylinder argument: base ring, its cover, chart and action."""

    name: str
    base: PresentedRing  # B_i (or S_i)
    cover: DoubleCover  # tilde X_i with sigma
    chart: GaChart
    phi_base: RingMorphism  # B_i -> chart ring
    action: Derivation  # LND on B_i whose flow phi intertwines with translation in v
    translation: Derivation  # d/dv on the chart ring
    ansatz_generators: tuple = ()
    extra: dict = field(default_factory=dict)


@dataclass
class CylinderData:
    """Everything the cylinder pipelines consume."""

    label: str
    base_cover: DoubleCover  # Z_* with sigma (cocycles live here)
    first: Bundle
    second: Bundle
    cocycle_first: Cocycle
    cocycle_second: Cocycle
    cylinder_derivation: dict  # images of the LND on first.base[w]
    invariant_vars: tuple  # variables Theta must fix
    w: str = "w"


# -- Koras-Russell data ------------------------------------------------------------

def kr_rings() -> dict:
    A = ring("x, y, z, t", KR_EQUATION, name="A")
    A2 = ring("x, y, z, t", KR_REWRITTEN, name="A'")
    return {"A": A, "A'": A2}


def kr_derivations(A: PresentedRing) -> tuple[Derivation, Derivation]:
    d1 = Derivation(A, {"z": "x^2", "y": "-2*z"}, name="d1")
    d2 = Derivation(A, {"t": "x^2", "y": "-3*t^2"}, name="d2")
    return d1, d2


PHI1 = {"x": "x", "y": "mu^3 + x*v", "z": "2*mu^3*v + x*v^2", "t": "mu^2"}
PHI2 = {
    "x": "x",
    "y": "mu^3 - 1/2*mu^-3*x + x^2*v",
    "z": "1/4*mu^-6 + (2*mu^3 - mu^-3*x)*v + x^2*v^2",
    "t": "mu^2",
}
SHIFT1 = ("2*mu^3", "x")
SHIFT2 = ("-mu^-3*x + 2*mu^3", "x^2")


def _bundle(name, base_rel, cover_rel, phi, action, shift, base_cover, ansatz, gluing_power):
    B = ring("x, y, z, t^±1", base_rel, name=name.replace("X", "B"))
    cov_ring = ring("x, y, z, mu^±1", cover_rel, name=f"~{name}")
    cover = DoubleCover(cov_ring, {"mu": "-mu"}, base_generators=("x", "mu^2"), name=f"~{name}")
    chart_ring = ring("v, x, mu^±1", name=f"chart[{name}]")
    phi_base = RingMorphism(B, chart_ring, phi, {"t": "mu^-2"}, name=f"phi[{name}]")
    cover_images = {k: v for k, v in phi.items() if k != "t"}
    cover_images["mu"] = "mu"
    phi_cover = RingMorphism(cov_ring, chart_ring, cover_images, name=f"phi~[{name}]")
    reps = fiber_coordinate_reps(phi_cover, "v", "x", "y", "z")
    cocycle = Cocycle(base_cover, RingFraction(base_cover.total, *shift), name=f"c[{name}]")
    chart = GaChart(name, cover, chart_ring, phi_cover, "v", cocycle, reps, "x")
    act = Derivation(B, action, name=f"action[{name}]")
    trans = Derivation(chart_ring, {"v": 1}, name="d/dv")
    return Bundle(name, B, cover, chart, phi_base, act, trans, ansatz, {"gluing_power": gluing_power})


def kr_data(shift1=SHIFT1, shift2=SHIFT2, phi1=None, action1=None) -> CylinderData:
    Z = ring("x, mu^±1", name="Z*")
    base_cover = DoubleCover(Z, {"mu": "-mu"}, base_generators=("x", "mu^2"), name="Z*")
    gens = ("v", "x", "mu^3", "mu^-3")
    b1 = _bundle("X1", "x*z - y^2 + t^3", "x*z - y^2 + mu^6", phi1 or PHI1,
                 action1 or {"y": "x", "z": "2*y"}, shift1, base_cover, gens, 1)
    b2 = _bundle("X2", KR_REWRITTEN, "x^2*z - y^2 - x + mu^6", PHI2,
                 {"y": "x^2", "z": "2*y"}, shift2, base_cover, gens, 2)
    return CylinderData(
        label="kr",
        base_cover=base_cover,
        first=b1,
        second=b2,
        cocycle_first=b1.chart.shift,
        cocycle_second=b2.chart.shift,
        cylinder_derivation={"x": "2*y", "y": "z"},
        invariant_vars=("x", "t"),
    )


# -- Danielewski data ----------------------------------------------------------------

def _dan_bundle(name, n, base_cover, shift_power=None):
    xn = "x" if n == 1 else f"x^{n}"
    S = ring("x, y, z", f"{xn}*z - y^2 + 1", name=name)
    cov_ring = ring("x, y, z, eps", f"{xn}*z - y^2 + 1", "eps^2 - 1", name=f"~{name}")
    cover = DoubleCover(cov_ring, {"eps": "-eps"}, base_generators=("x",), name=f"~{name}")
    chart_ring = ring("v, x, eps", "eps^2 - 1", name=f"chart[{name}]")
    phi = {"x": "x", "y": f"eps + {xn}*v", "z": f"2*eps*v + {xn}*v^2"}
    # the base ring has no fiber variable; phi_base is only defined on the cover
    phi_cover = RingMorphism(cov_ring, chart_ring, {**phi, "eps": "eps"}, name=f"phi~[{name}]")
    reps = fiber_coordinate_reps(phi_cover, "v", "x", "y", "z")
    sp = shift_power or n
    cocycle = Cocycle(base_cover, RingFraction(base_cover.total, "2*eps", "x" if sp == 1 else f"x^{sp}"),
                      name=f"c[{name}]")
    chart = GaChart(name, cover, chart_ring, phi_cover, "v", cocycle, reps, "x")
    act = Derivation(S, {"y": xn, "z": "2*y"}, name=f"action[{name}]")
    trans = Derivation(chart_ring, {"v": 1}, name="d/dv")
    # on the base, phi factors through the cover: compose S -> ~S -> chart
    incl = RingMorphism(S, cov_ring, {"x": "x", "y": "y", "z": "z"}, name="incl")
    phi_base = compose(phi_cover, incl, name=f"phi[{name}]")
    return Bundle(name, S, cover, chart, phi_base, act, trans, ("v", "x", "eps"), {"gluing_power": n})


def danielewski_data(shift_power_first: int | None = None) -> CylinderData:
    base = ring("x, eps", "eps^2 - 1", name="doubled line")
    base_cover = DoubleCover(base, {"eps": "-eps"}, base_generators=("x",), name="doubled line")
    b1 = _dan_bundle("S1", 1, base_cover, shift_power_first)
    b2 = _dan_bundle("S2", 2, base_cover)
    return CylinderData(
        label="danielewski",
        base_cover=base_cover,
        first=b1,
        second=b2,
        cocycle_first=b1.chart.shift,
        cocycle_second=b2.chart.shift,
        cylinder_derivation={"x": "2*y", "y": "z"},
        invariant_vars=("x",),
    )


@lru_cache(maxsize=None)
def cached_kr_data() -> CylinderData:
    return kr_data()


@lru_cache(maxsize=None)
def cached_danielewski_data() -> CylinderData:
    return danielewski_data()


def default_ansatz(bundle: Bundle, degree: int) -> Ansatz:
    return Ansatz(tuple(bundle.ansatz_generators), degree)
