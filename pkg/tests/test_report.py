from __future__ import annotations

import io
import json

import pytest

from krcert.report import (INCONCLUSIVE, REFUTED, VERIFIED, ClaimResult, Report, emit_report, from_json, overall,
                           replay_report, to_json, to_text)


def _report(*statuses):
    return Report("demo", [ClaimResult(f"c-{n}", "claim", s, "topic", {}, 1.5) for n, s in enumerate(statuses)])


@pytest.mark.parametrize("statuses, verdict, code", [
    ((VERIFIED, VERIFIED), VERIFIED, 0),
    ((VERIFIED, INCONCLUSIVE), INCONCLUSIVE, 2),
    ((INCONCLUSIVE, REFUTED), REFUTED, 1),
    ((), VERIFIED, 0),
])
def test_verdict_and_exit_code(statuses, verdict, code):
    rep = _report(*statuses)
    assert rep.verdict == verdict == overall(statuses) and rep.exit_code() == code


def test_json_schema_and_roundtrip():
    rep = _report(VERIFIED, REFUTED)
    data = json.loads(to_json(rep))
    assert set(data) == {"pipeline", "version", "claims", "verdict"}
    assert set(data["claims"][0]) == {"id", "description", "status", "paper_ref", "detail", "ms"}
    assert from_json(to_json(rep)).to_dict() == rep.to_dict()


def test_tampered_verdict_is_rejected():
    data = _report(REFUTED).to_dict()
    data["verdict"] = VERIFIED
    with pytest.raises(ValueError):
        Report.from_dict(data)


def test_unknown_status_is_rejected():
    with pytest.raises(ValueError):
        ClaimResult("x", "claim", "probably")


def test_text_and_stream_output():
    rep = _report(VERIFIED)
    text = to_text(rep)
    assert "[    VERIFIED] c-0: claim" in text and text.endswith("verdict: verified\n")
    buf = io.StringIO()
    emit_report(rep, "json", buf)
    assert json.loads(buf.getvalue())["verdict"] == VERIFIED
    with pytest.raises(ValueError):
        emit_report(rep, "yaml", buf)


def test_verified_claims_need_certificates():
    assert replay_report(_report(VERIFIED, REFUTED)) == {"c-0": False}


def test_malformed_certificate_does_not_replay():
    rep = Report("demo", [ClaimResult("c", "claim", VERIFIED, "", {"certificates": [{"kind": "unknown"}]})])
    assert replay_report(rep) == {"c": False}
