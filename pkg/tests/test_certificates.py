from __future__ import annotations

import copy

import pytest

from krcert.certificates import REPLAYERS, replay
from krcert.pipelines import run_pipeline


@pytest.fixture(scope="module")
def certificates():
    report = run_pipeline("kr-cylinder")
    out = {}
    for claim in report.claims:
        for cert in claim.detail.get("certificates", []):
            out.setdefault(cert["kind"], cert)
    return out


def test_every_kind_is_exercised_and_replays(certificates):
    assert set(REPLAYERS) - {"check_line", "pole_order"} <= set(certificates)
    verified = {f"kr-{n}" for n in range(1, 12)}
    for cert in certificates.values():
        assert replay(cert, verified)


def _tamper(cert):
    c = copy.deepcopy(cert)
    kind = c["kind"]
    if kind == "substitution":
        c["expected"] = c["expected"] + " + 1"
    elif kind in ("inverse_pair", "conjugate"):
        key = "inverse"
        images = c[key]["images"]
        var = sorted(images)[0]
        images[var] = f"({images[var]}) + 1"
    elif kind == "lnd":
        var = sorted(c["indices"])[0]
        c["indices"][var] += 1
    elif kind == "kernel_member":
        c["elements"].append("y")
    elif kind == "kernel_bounded":
        c["basis"] = c["basis"][:-1]
    elif kind == "involution":
        c["sigma"] = {k: "mu" if v == "-mu" else v for k, v in c["sigma"].items()}
    elif kind == "morphism":
        images = c["morphism"]["images"]
        images["x"] = f"({images['x']})^2"
    elif kind == "equivariance":
        c["target_derivation"] = {k: f"2*({v})" for k, v in c["target_derivation"].items()}
    elif kind == "twist_invariance":
        c["elements"].append("v")
    elif kind == "antisymmetry":
        c["value"]["numerator"] = "mu^2"
    elif kind == "splitting":
        c["cocycle"]["numerator"] = "mu^3"
    elif kind == "nonzero":
        c["element"] = "0"
    elif kind == "cleared":
        c["k"] += 1
    elif kind == "irreducible_linear":
        c["polynomial"] = "x*z + x*y"
    elif kind == "implication":
        c["premises"].append("kr-99")
    return c


@pytest.mark.parametrize("kind", ["substitution", "inverse_pair", "conjugate", "lnd", "kernel_member",
                                  "kernel_bounded", "involution", "morphism", "equivariance", "twist_invariance",
                                  "antisymmetry", "splitting", "nonzero", "cleared", "irreducible_linear",
                                  "implication"])
def test_tampered_certificates_fail(certificates, kind):
    verified = {f"kr-{n}" for n in range(1, 12)}
    bad = _tamper(certificates[kind])
    try:
        ok = replay(bad, verified)
    except Exception:
        ok = False
    assert not ok


def test_implication_requires_verified_premises(certificates):
    assert not replay(certificates["implication"], set())
    assert not replay(certificates["implication"])


def test_unknown_kind():
    with pytest.raises(ValueError):
        replay({"kind": "vibes"})
