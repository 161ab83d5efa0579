"""Claim reports, suite configuration and the bookkeeping shared by all suites."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Mapping

from .homology import format_homology
from .linalg import FGAbelianGroup
from .modules import DegreeWindow, format_table

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "inconclusive")
SUITES = ("lemma-key", "tau-triangles", "thm1", "sod-theta", "lemma-main1", "sod-chart", "decompose")

# at most this many failing cases are spelled out in a witness
MAX_FAILURES = 8


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    ls: tuple[int, ...] = ()
    window: DegreeWindow | None = None
    depth: int = 8
    divisors: tuple[int, ...] = ()
    samples: tuple[str, ...] = ()
    indices: tuple[int, ...] = ()
    citations: tuple[tuple[str, str], ...] = ()
    json_path: str | None = None
    quiet: bool = False

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        for l in self.ls:
            if l < 2:
                raise ConfigError(f"l must be >= 2, got {l}")
        for n in self.divisors:
            if n < 2:
                raise ConfigError(f"divisor N must be >= 2, got {n}")
        if self.depth < 2:
            raise ConfigError(f"depth must be >= 2, got {self.depth}")

    def window_for(self, l: int) -> DegreeWindow:
        return self.window or DegreeWindow.default(l)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "l": list(self.ls),
            "window": str(self.window) if self.window else None,
            "depth": self.depth,
            "divisor": list(self.divisors),
            "samples": list(self.samples),
            "index": list(self.indices),
        }


@dataclass
class ClaimReport:
    claim: str
    citation: str
    params: dict
    status: str
    witness: dict
    wall_time: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "pass" and not self.witness:
            raise ValueError(f"claim {self.claim} passes without a witness")

    @property
    def key(self) -> tuple:
        return (self.claim, sorted(self.params.items()))

    def to_json(self) -> dict:
        # wall time is left out so that reports are reproducible byte for byte
        return {
            "claim": self.claim,
            "citation": self.citation,
            "params": dict(self.params),
            "status": self.status,
            "witness": self.witness,
        }

    def line(self, suite: str) -> str:
        p = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"[{self.status.upper()}] {suite} {self.claim} {p}".rstrip()


def describe(obj, ring=None) -> str:
    """Compact text for tables, homology tables and groups."""
    if isinstance(obj, FGAbelianGroup):
        return str(obj)
    if isinstance(obj, Mapping):
        keys = list(obj)
        if keys and isinstance(keys[0], tuple) and len(keys[0]) == 2 and isinstance(keys[0][0], int) and isinstance(keys[0][1], tuple):
            return format_homology(obj, ring)
        return format_table(obj, ring)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(describe(o, ring) for o in obj) + "]"
    return str(obj)


class Claim:
    """Accumulates the cases of one claim and turns them into a report."""

    def __init__(self, claim: str, statement: str, citations: Mapping[str, str] | None = None, **params):
        self.claim = claim
        self.statement = statement
        self.citation = statement
        if citations and claim in citations:
            self.citation = f"{citations[claim]}: {statement}"
        self.params = params
        self.cases = 0
        self.failures: list[dict] = []
        self.evidence: list[dict] = []
        self.open: list[dict] = []
        self._t0 = time.perf_counter()
        self.notes: dict[str, Any] = {}

    def check(self, label: str, ok: bool, lhs, rhs, ring=None) -> bool:
        self.cases += 1
        entry = {"case": label, "lhs": describe(lhs, ring)}
        if ok:
            self.evidence.append(entry)
        else:
            entry["rhs"] = describe(rhs, ring)
            self.failures.append(entry)
        return ok

    def truth(self, label: str, ok: bool, detail: str) -> bool:
        self.cases += 1
        (self.evidence if ok else self.failures).append({"case": label, "lhs": detail})
        return ok

    def undecided(self, label: str, detail: str) -> None:
        self.cases += 1
        self.open.append({"case": label, "lhs": detail})

    def report(self) -> ClaimReport:
        if self.failures:
            status = "fail"
        elif self.open:
            status = "inconclusive"
        elif self.cases:
            status = "pass"
        else:
            status = "fail"
            self.notes["error"] = "no cases were checked"
        witness = {"cases": self.cases, "evidence": self.evidence}
        if self.failures:
            witness["failures"] = self.failures[:MAX_FAILURES]
            witness["failure_count"] = len(self.failures)
        if self.open:
            witness["inconclusive"] = self.open
        witness.update(self.notes)
        return ClaimReport(
            self.claim, self.citation, self.params, status, witness, time.perf_counter() - self._t0
        )


def exit_code(reports: list[ClaimReport]) -> int:
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return 1
    if "inconclusive" in statuses:
        return 3
    return 0


def report_document(cfg: SuiteConfig, reports: list[ClaimReport]) -> dict:
    counts = {s: sum(r.status == s for r in reports) for s in STATUSES}
    return {
        "schema": SCHEMA_VERSION,
        "suite": cfg.suite,
        "config": cfg.to_json(),
        "claims": [r.to_json() for r in reports],
        "summary": {**counts, "exit_code": exit_code(reports)},
    }
