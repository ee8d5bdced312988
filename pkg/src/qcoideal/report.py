"""Structured pass/fail records for the identity suites.

Reports serialize deterministically: entries are sorted by id and timing data
is omitted unless explicitly requested, so two runs with the same
configuration produce byte-identical output.
"""

from __future__ import annotations

import json
import time


PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"

SCHEMA_ID = "qcoideal-report/1"

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "qcoideal verification report",
    "type": "object",
    "required": ["schema", "suite", "params", "overall", "entries"],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "suite": {"type": "string"},
        "params": {"type": "object"},
        "overall": {"enum": [PASS, FAIL]},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "status"],
                "properties": {
                    "id": {"type": "string"},
                    "status": {"enum": [PASS, FAIL, SKIP]},
                    "witness": {"type": ["string", "null"]},
                    "required": {"type": "boolean"},
                    "elapsed": {"type": "number"},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


class CheckEntry:
    __slots__ = ("id", "status", "witness", "required", "elapsed")

    def __init__(self, id, status, witness=None, required=True, elapsed=0.0):
        self.id = id
        self.status = status
        self.witness = witness
        self.required = required
        self.elapsed = elapsed


class VerificationReport:
    """One record per identity, plus an overall verdict.

    Overall is PASS iff there is no FAIL and no required SKIP.
    """

    def __init__(self, suite: str, params=None):
        self.suite = suite
        self.params = dict(params or {})
        self.entries = []

    def add(self, id: str, ok: bool, witness=None, elapsed=0.0):
        self.entries.append(CheckEntry(
            id, PASS if ok else FAIL,
            None if ok else (witness or "identity failed"),
            elapsed=elapsed))

    def add_skip(self, id: str, reason: str, required=True):
        self.entries.append(CheckEntry(id, SKIP, reason, required=required))

    def check(self, id: str, fn):
        """Run fn() -> (ok, witness | None) and record it with timing."""
        t0 = time.perf_counter()
        ok, witness = fn()
        self.entries.append(CheckEntry(
            id, PASS if ok else FAIL, witness,
            elapsed=time.perf_counter() - t0))

    def merge(self, other: "VerificationReport"):
        self.entries.extend(other.entries)
        return self

    @property
    def overall(self) -> str:
        for e in self.entries:
            if e.status == FAIL:
                return FAIL
            if e.status == SKIP and e.required:
                return FAIL
        return PASS

    def sorted_entries(self):
        return sorted(self.entries, key=lambda e: e.id)

    def failures(self):
        return [e for e in self.entries if e.status == FAIL
                or (e.status == SKIP and e.required)]

    def to_dict(self, timings=False):
        entries = []
        for e in self.sorted_entries():
            d = {"id": e.id, "status": e.status}
            if e.witness is not None:
                d["witness"] = e.witness
            if e.status == SKIP:
                d["required"] = e.required
            if timings:
                d["elapsed"] = round(e.elapsed, 6)
            entries.append(d)
        return {
            "schema": SCHEMA_ID,
            "suite": self.suite,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "overall": self.overall,
            "entries": entries,
        }

    def to_json(self, timings=False) -> str:
        return json.dumps(self.to_dict(timings=timings), indent=2,
                          sort_keys=False) + "\n"

    def to_text(self, timings=False) -> str:
        lines = ["suite %s  params %s" % (
            self.suite,
            " ".join("%s=%s" % (k, self.params[k])
                     for k in sorted(self.params)) or "-")]
        for e in self.sorted_entries():
            line = "%-6s %s" % (e.status, e.id)
            if timings:
                line += "  (%.3fs)" % e.elapsed
            if e.witness and e.status != PASS:
                line += "  [%s]" % e.witness
            lines.append(line)
        lines.append("overall %s" % self.overall)
        return "\n".join(lines) + "\n"
