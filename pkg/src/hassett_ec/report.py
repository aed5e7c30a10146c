"""Run selected checks for one ``n`` and assemble a versioned report."""

from __future__ import annotations

import csv
import io
import json
import time
import traceback
from dataclasses import dataclass, field
from typing import Callable

from . import __version__
from .collection import enumerate_collection, euler_characteristic, level_key, verify_invariance
from .core_model import dictionary_audit, half_rank
from .exceptionality import verify_collection_exceptional
from .fullness import tag_label, verify_fullness
from .windows import maxmin_audit, maxmin_audit_odd, window_audit

SCHEMA_VERSION = "hassett-ec/report/v1"
CHECK_ORDER = ("enumerate", "invariance", "dictionary", "windows", "maxmin", "exceptional", "gram",
               "fullness")
PASS, FAIL, FINDING = "PASS", "FAIL", "FINDING"


@dataclass
class RunConfig:
    n: int
    checks: tuple[str, ...] = CHECK_ORDER
    jobs: int = 1
    out: str | None = None
    fmt: str = "structured"
    max_p: int | None = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("n must be at least 2")
        unknown = set(self.checks) - set(CHECK_ORDER)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
        if not self.checks:
            raise ValueError("select at least one check")
        if self.fmt not in ("structured", "tabular"):
            raise ValueError("format must be 'structured' or 'tabular'")
        self.checks = tuple(c for c in CHECK_ORDER if c in self.checks)


@dataclass
class CheckResult:
    status: str
    summary: str
    evidence: dict = field(default_factory=dict)


@dataclass
class Report:
    n: int
    results: dict[str, CheckResult]
    timing: dict[str, float]
    tool_version: str = __version__
    schema_version: str = SCHEMA_VERSION

    @property
    def failed(self) -> bool:
        return any(r.status == FAIL for r in self.results.values())

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def as_dict(self, with_timing: bool = True) -> dict:
        out = {"schema_version": self.schema_version, "tool_version": self.tool_version, "n": self.n,
               "checks": {k: {"status": r.status, "summary": r.summary, "evidence": r.evidence}
                          for k, r in self.results.items()}}
        if with_timing:
            out["timing_seconds"] = self.timing
        return out

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.as_dict(with_timing), indent=2, sort_keys=True)

    def to_table(self) -> str:
        lines = ["check\tstatus\tsummary"]
        lines += [f"{k}\t{r.status}\t{r.summary}" for k, r in self.results.items()]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# individual checks


def _check_enumerate(cfg: RunConfig, ctx: dict) -> CheckResult:
    coll = enumerate_collection(cfg.n)
    expected = euler_characteristic(cfg.n)
    items = [{"label": it.label, "level": list(level_key(it))} for it in coll.items]
    status = PASS if len(coll) == expected else FAIL
    return CheckResult(status, f"{len(coll)} items, Euler characteristic {expected}",
                       {"size": len(coll), "euler_characteristic": expected,
                        "torsion": len(coll.torsion), "items": items})


def _check_invariance(cfg: RunConfig, ctx: dict) -> CheckResult:
    rep = verify_invariance(cfg.n)
    return CheckResult(PASS if rep.closed else FAIL,
                       f"closed under {rep.generators_checked} generators" if rep.closed
                       else f"{len(rep.violations)} violations", rep.as_dict())


def _check_dictionary(cfg: RunConfig, ctx: dict) -> CheckResult:
    rep = dictionary_audit(cfg.n)
    return CheckResult(PASS if rep.ok else FAIL, f"{rep.pairs_checked} (E,p) pairs", rep.as_dict())


def _check_windows(cfg: RunConfig, ctx: dict) -> CheckResult:
    rep = window_audit(cfg.n)
    if not rep.existence_ok:
        status = FAIL
    elif not rep.anchors_ok:
        status = FINDING
    else:
        status = PASS
    summary = (f"windows exist at all {len(rep.audits)} strata; "
               f"printed anchors fail at {len(rep.anchor_failures)}")
    return CheckResult(status, summary, rep.as_dict())


def _check_maxmin(cfg: RunConfig, ctx: dict) -> CheckResult:
    entries = maxmin_audit(cfg.n) if cfg.n % 2 == 0 else maxmin_audit_odd(cfg.n)
    bad = [e for e in entries if not e.matches]
    status = PASS if not bad else FINDING
    return CheckResult(status, f"{len(entries) - len(bad)}/{len(entries)} extremes match the closed forms",
                       {"entries": [e.as_dict() for e in entries]})


def _exceptional_report(cfg: RunConfig, ctx: dict):
    if "exc" not in ctx:
        ctx["exc"] = verify_collection_exceptional(cfg.n, jobs=cfg.jobs)
    return ctx["exc"]


def _check_exceptional(cfg: RunConfig, ctx: dict) -> CheckResult:
    rep = _exceptional_report(cfg, ctx)
    failures = len(rep.failures) + rep.indeterminate
    return CheckResult(PASS if not failures else FAIL,
                       f"{rep.pairs_checked} ordered pairs, {len(rep.failures)} failures",
                       rep.as_dict())


def _check_gram(cfg: RunConfig, ctx: dict) -> CheckResult:
    rep = _exceptional_report(cfg, ctx)
    ok = rep.unitriangular and abs(rep.determinant) == 1 and rep.size == euler_characteristic(cfg.n)
    return CheckResult(PASS if ok else FAIL,
                       f"{rep.size}x{rep.size}, unitriangular={rep.unitriangular}, det={rep.determinant}",
                       {"size": rep.size, "unitriangular": rep.unitriangular, "determinant": rep.determinant})


def _check_fullness(cfg: RunConfig, ctx: dict) -> CheckResult:
    rep = verify_fullness(cfg.n, max_p=cfg.max_p)
    return CheckResult(PASS if rep.ok else FAIL,
                       f"{len(rep.results)} targets certified, {len(rep.errors)} errors", rep.as_dict())


_CHECKS: dict[str, Callable[[RunConfig, dict], CheckResult]] = {
    "enumerate": _check_enumerate, "invariance": _check_invariance, "dictionary": _check_dictionary,
    "windows": _check_windows, "maxmin": _check_maxmin, "exceptional": _check_exceptional,
    "gram": _check_gram, "fullness": _check_fullness,
}


def run(config: RunConfig) -> Report:
    results: dict[str, CheckResult] = {}
    timing: dict[str, float] = {}
    ctx: dict = {}
    for name in config.checks:
        start = time.perf_counter()
        try:
            results[name] = _CHECKS[name](config, ctx)
        except Exception as exc:  # surfaced as a failed check, not a crash
            results[name] = CheckResult(FAIL, f"internal error: {exc!r}",
                                        {"trace": traceback.format_exc()})
        timing[name] = round(time.perf_counter() - start, 3)
    report = Report(config.n, results, timing)
    if config.out:
        text = report.to_json() if config.fmt == "structured" else report.to_table()
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return report


def gram_csv(n: int, jobs: int = 1) -> str:
    """The Gram matrix as CSV with a header row of item labels."""
    rep = verify_collection_exceptional(n, jobs=jobs)
    labels = [it.label for it in enumerate_collection(n).items]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + labels)
    for label, row in zip(labels, rep.gram):
        writer.writerow([label] + row)
    return buf.getvalue()


def default_max_score(n: int) -> int:
    return half_rank(n) + 4


__all__ = ["RunConfig", "Report", "CheckResult", "run", "gram_csv", "CHECK_ORDER", "tag_label"]
