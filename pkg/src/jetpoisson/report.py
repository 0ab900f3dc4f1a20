"""Shared verification-report record and its JSON / text serializations.

Every verifier in the package returns one (or a list of) VerificationReport;
the record is deterministic: parameters are emitted with sorted keys and the
witness carries the first offending index tuple plus a rendered residual.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class VerificationReport:
    check: str
    params: dict = field(default_factory=dict)
    status: str = "pass"
    witness: Optional[dict] = None  # {"indices": [...], "residual": str}

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "status": self.status,
            "witness": None
            if self.witness is None
            else {
                "indices": list(self.witness["indices"]),
                "residual": self.witness["residual"],
            },
        }

    def to_text(self) -> str:
        params = " ".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        line = f"{self.status.upper():4s} {self.check}"
        if params:
            line += f" [{params}]"
        if self.witness is not None:
            line += f" witness={tuple(self.witness['indices'])} residual={self.witness['residual']}"
        return line


def passed(check: str, **params) -> VerificationReport:
    return VerificationReport(check, params, "pass", None)


def failed(check: str, indices, residual: str, **params) -> VerificationReport:
    return VerificationReport(
        check, params, "fail", {"indices": list(indices), "residual": residual}
    )


def emit_report(records: list[VerificationReport], fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in records], indent=2) + "\n"
    if fmt == "text":
        return "".join(r.to_text() + "\n" for r in records)
    raise ValueError(f"unknown report format: {fmt}")


def parse_report(data: str) -> list[VerificationReport]:
    records = []
    for item in json.loads(data):
        records.append(
            VerificationReport(item["check"], item["params"], item["status"], item["witness"])
        )
    return records
