"""Structured records for identity checks and suite reports."""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass, field
from typing import Any

from .weyl import WeylElement


@dataclass
class IdentityRecord:
    """Outcome of one identity check.

    ``passed`` is true iff the residual is exactly zero (symbolic checks) or
    below ``tolerance`` (numeric checks). ``expect`` is ``"zero"`` for real
    identities and ``"nonzero"`` for negative controls, which must fail.
    """

    identity: str
    anchor: str
    passed: bool
    residual: str = "0"
    degree: int | None = None
    tolerance: float | None = None
    expect: str = "zero"
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed == (self.expect == "zero")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def residual_summary(r: WeylElement, grading=None) -> str:
    """``"0"`` for a vanishing residual, else a short deterministic description."""
    if r.is_zero():
        return "0"
    text = f"nonzero: {len(r)} terms"
    if grading is not None:
        lo = r.min_degree(grading)
        low = r.homogeneous_part(lo, grading)
        shown = str(low)
        if len(shown) > 160:
            shown = shown[:157] + "..."
        text += f"; lowest degree {lo}: {shown}"
    else:
        shown = str(r)
        if len(shown) > 160:
            shown = shown[:157] + "..."
        text += f": {shown}"
    return text


def exact_record(identity: str, anchor: str, residual: WeylElement, *, degree=None,
                 grading=None, expect="zero", **details) -> IdentityRecord:
    return IdentityRecord(
        identity=identity,
        anchor=anchor,
        passed=residual.is_zero(),
        residual=residual_summary(residual, grading),
        degree=degree,
        expect=expect,
        details=details,
    )


def numeric_record(identity: str, anchor: str, value: float, tolerance: float, *,
                   expect="zero", **details) -> IdentityRecord:
    return IdentityRecord(
        identity=identity,
        anchor=anchor,
        passed=bool(value < tolerance),
        residual=f"{value:.17g}",
        tolerance=tolerance,
        expect=expect,
        details=details,
    )


@dataclass
class SuiteReport:
    suite: str
    records: list[IdentityRecord] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def add(self, record: IdentityRecord) -> IdentityRecord:
        self.records.append(record)
        return record

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "records": [r.as_dict() for r in self.records],
            "info": self.info,
        }


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, default=_default) + "\n"


def _default(o):
    if isinstance(o, complex):
        from .scalar import format_complex
        return format_complex(o)
    if isinstance(o, float):
        return float(f"{o:.17g}")
    return str(o)


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".report-", dir=directory)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
