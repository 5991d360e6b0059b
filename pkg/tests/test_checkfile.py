from __future__ import annotations

import pytest

from krcert.checkfile import CheckFileError, run_check_file, split_top
from krcert.report import INCONCLUSIVE, REFUTED, VERIFIED, replay_report

HEADER = """\
ring A = Q(i)[x, y, z, t] / (x + x^2*y + z^2 + t^3)
ring P = Q(i)[x, y, z, t]
derivation d1 on A: z -> x^2, y -> -2*z
derivation d2 on A: t -> x^2, y -> -3*t^2
derivation e on A: y -> 1
morphism swap: P -> P: x -> y, y -> x, z -> z, t -> t
"""


def _statuses(body):
    return [c.status for c in run_check_file(HEADER + body).claims]


@pytest.mark.parametrize("line, status", [
    ("check well-defined d1", VERIFIED),
    ("check well-defined e", REFUTED),
    ("check lnd d2 cap 8", VERIFIED),
    ("check lnd d1 cap 1", INCONCLUSIVE),
    ("check kernel d1 contains x, t, x^2*y + z^2", VERIFIED),
    ("check kernel d1 contains y", REFUTED),
    ("check kernel-bounded d1, d2 degree 3 equals 1, x, x^2, x^3", VERIFIED),
    ("check kernel-bounded d1, d2 degree 3 equals 1, x", REFUTED),
    ("check morphism swap", VERIFIED),
    ("check inverse swap swap", VERIFIED),
    ("check equal A: x^2*y = -x - z^2 - t^3", VERIFIED),
    ("check zero A: x + x^2*y + z^2 + t^3", VERIFIED),
    ("check member A: x^2*y in x", VERIFIED),
    ("check member A: t in x, z", REFUTED),
    ("check radical A: t in x, z", VERIFIED),
    ("check unit-ideal A: x, z", REFUTED),
    ("check unit-ideal A: x, x - 1", VERIFIED),
    ("check irreducible P: x^2*z - y^2 - x + t^3 in z", VERIFIED),
    ("check irreducible P: x*z + x*y in z", REFUTED),
    ("check pole-order A: x^-2 + 1 in x = 2", VERIFIED),
    ("check pole-order A: x^-2 + 1 in x = 1", REFUTED),
])
def test_check_directives(line, status):
    assert _statuses(line) == [status]


def test_claim_ids_and_replay():
    report = run_check_file(HEADER + "# comment\ncheck well-defined d1\n\ncheck lnd d1\n")
    assert [c.id for c in report.claims] == ["line-8", "line-10"]
    assert replay_report(report) == {"line-8": True, "line-10": True}


@pytest.mark.parametrize("body", [
    "derivation d on B: x -> 1",
    "check well-defined nope",
    "frobnicate A",
    "ring B = Q[x]",
    "check pole-order A: x in x",
    "check equal A: x +",
    "check teleport A: x",
])
def test_malformed_input_raises(body):
    with pytest.raises(CheckFileError):
        run_check_file(HEADER + body)


def test_split_top_respects_parentheses():
    assert split_top("a, (b, c), d") == ["a", "(b, c)", "d"]
    assert split_top("") == []
