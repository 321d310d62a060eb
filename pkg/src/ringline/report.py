"""Deterministic check reports.

A report is a pure function of (suite names, configs, seed, version): a
header line followed by one JSON object per check record, each dumped
with sorted keys.  Timing never enters the payload, so identical inputs
give byte-identical files; the human summary that accompanies a run on
standard output is free to mention wall time.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

VERSION = "0.1.0"


def _jsonable(value):
    """Recursively coerce a witness payload into plain JSON types."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, (np.bool_, np.integer, np.floating)):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return [_jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    return repr(value)


def normalize_record(suite: str, rec: dict) -> dict:
    """Fill in the fixed record shape: suite, name, target, mode, checked, passed, witness."""
    return {
        "suite": str(suite),
        "name": str(rec["name"]),
        "target": str(rec.get("target", "")),
        "mode": str(rec.get("mode", "exhaustive")),
        "checked": int(rec.get("checked", 0)),
        "passed": bool(rec["passed"]),
        "witness": _jsonable(rec.get("witness")),
    }


def digest_configs(configs) -> str:
    """Stable digest of whatever configuration influenced the run."""
    payload = json.dumps(_jsonable(configs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass
class RunReport:
    """An ordered list of normalized check records plus run identity."""

    suites: Tuple[str, ...]
    seed: int
    records: List[dict]
    configs_digest: str = digest_configs(None)
    version: str = VERSION

    @property
    def failures(self) -> List[dict]:
        return [r for r in self.records if not r["passed"]]

    @property
    def counts(self) -> dict:
        failed = len(self.failures)
        return {
            "total": len(self.records),
            "passed": len(self.records) - failed,
            "failed": failed,
        }

    def header(self) -> dict:
        head = {
            "kind": "ringline-report",
            "version": self.version,
            "seed": int(self.seed),
            "suites": list(self.suites),
            "configs_digest": self.configs_digest,
        }
        head.update(self.counts)
        return head

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.header(), sort_keys=True, separators=(",", ":"))]
        for rec in self.records:
            lines.append(json.dumps(rec, sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_jsonl())

    def summary(self) -> str:
        counts = self.counts
        out = []
        for suite in self.suites:
            recs = [r for r in self.records if r["suite"] == suite]
            bad = [r for r in recs if not r["passed"]]
            out.append(
                "%-14s %3d checks  %s"
                % (suite, len(recs), "ok" if not bad else "%d FAILED" % len(bad))
            )
            for r in bad:
                out.append("    FAIL %s @ %s (%s)" % (r["name"], r["target"], r["mode"]))
        out.append(
            "total: %d checks, %d passed, %d failed"
            % (counts["total"], counts["passed"], counts["failed"])
        )
        return "\n".join(out)
