"""Claim results, reports, serialization and replay."""

from __future__ import annotations

import json
import sys
from dataclasses import asdict, dataclass, field
from typing import IO

from . import __version__
from .certificates import replay

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"
STATUSES = (VERIFIED, REFUTED, INCONCLUSIVE)

EXIT_CODES = {VERIFIED: 0, REFUTED: 1, INCONCLUSIVE: 2}
EXIT_USAGE = 3


@dataclass
class ClaimResult:
    id: str
    description: str
    status: str
    paper_ref: str = ""
    detail: dict = field(default_factory=dict)
    ms: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass
class Report:
    pipeline: str
    claims: list
    version: str = __version__

    @property
    def verdict(self) -> str:
        return overall(c.status for c in self.claims)

    def to_dict(self) -> dict:
        return {
            "pipeline": self.pipeline,
            "version": self.version,
            "claims": [asdict(c) for c in self.claims],
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        claims = [ClaimResult(**c) for c in data["claims"]]
        rep = cls(data["pipeline"], claims, data.get("version", __version__))
        if "verdict" in data and data["verdict"] != rep.verdict:
            raise ValueError("stored verdict disagrees with claim statuses")
        return rep

    def without_timing(self) -> dict:
        d = self.to_dict()
        for c in d["claims"]:
            c["ms"] = 0
        return d

    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]


def overall(statuses) -> str:
    statuses = list(statuses)
    if any(s == REFUTED for s in statuses):
        return REFUTED
    if any(s == INCONCLUSIVE for s in statuses):
        return INCONCLUSIVE
    return VERIFIED


def to_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=False, ensure_ascii=False)


def from_json(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def to_text(report: Report) -> str:
    lines = [f"pipeline {report.pipeline} (krcert {report.version})"]
    for c in report.claims:
        lines.append(f"[{c.status.upper():>12}] {c.id}: {c.description}")
        if c.paper_ref:
            lines.append(f"{'':15}where: {c.paper_ref}")
        for key in ("summary", "note", "error"):
            if key in c.detail:
                lines.append(f"{'':15}{key}: {c.detail[key]}")
        lines.append(f"{'':15}time: {c.ms:.0f} ms")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "json", destination: str | IO | None = None) -> str:
    """Serialize deterministically; write to a path, a stream, or stdout when ``destination`` is None."""
    if fmt == "json":
        text = to_json(report) + "\n"
    elif fmt == "text":
        text = to_text(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if destination is None:
        sys.stdout.write(text)
    elif isinstance(destination, str):
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        destination.write(text)
    return text


def replay_report(report: Report) -> dict[str, bool]:
    """Re-check every certificate of every verified claim.

    Returns ``{claim_id: ok}`` for verified claims; refuted and inconclusive claims carry
    no certificate obligation. Malformed certificates count as not replaying.
    """
    verified = {c.id for c in report.claims if c.status == VERIFIED}
    out = {}
    for c in report.claims:
        if c.status != VERIFIED:
            continue
        certs = c.detail.get("certificates", [])
        out[c.id] = bool(certs) and all(_replays(cert, verified) for cert in certs)
    return out


def _replays(cert: dict, verified: set) -> bool:
    try:
        return replay(cert, verified)
    except Exception:  # a certificate that cannot be re-checked does not replay
        return False
