"""Serialization of census, subgroup and verification reports.

JSON output is one line per report, keys in a fixed order, tagged with the
schema version.  ``elapsed_ms`` is informational and is the only field that
varies between identical runs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import IO

from .census import CensusReport
from .verify import VerifyReport

SCHEMA = "maxclass-units/1"
FORMATS = ("json", "csv", "text")


@dataclass
class SubgroupCensus:
    spec: str
    n: int
    order: int
    empty: bool
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "n": self.n,
            "order": self.order,
            "empty": self.empty,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["true" if v is True else "false" if v is False else "" if v is None else v for v in row])
    return buf.getvalue()


def _json(d: dict) -> str:
    return json.dumps({"schema": SCHEMA, **d}) + "\n"


def render(report, fmt: str) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(report, VerifyReport):
        return _render_verify(report, fmt)
    d = report.to_dict()
    if fmt == "json":
        return _json(d)
    if fmt == "csv":
        return _csv(list(d), [list(d.values())])
    if isinstance(report, CensusReport):
        return _text_census(report)
    return (
        f"{report.spec} n={report.n}: order={report.order}"
        f"{' (empty)' if report.empty else ''} [{d['elapsed_ms']} ms]\n"
    )


def _text_census(r: CensusReport) -> str:
    name = f"{r.family.value}{2 ** (r.n + 1)}"
    method = r.method.value + (f"/{r.order_source}" if r.order_source else "")
    if r.budget_exhausted:
        return f"{name} {method}: budget exhausted after {r.elapsed * 1000:.3f} ms\n"
    return (
        f"{name} {method}: total={r.total} type1={r.type1} type2={r.type2} "
        f"involutions={r.involutions} [{r.elapsed * 1000:.3f} ms]\n"
    )


def _render_verify(r: VerifyReport, fmt: str) -> str:
    if fmt == "json":
        return _json({
            "suite": r.suite,
            "pass": r.passed,
            "checks": [
                {"name": c.name, "n": c.n, "expected": _plain(c.expected), "actual": _plain(c.actual), "pass": c.passed}
                for c in r.checks
            ],
            "elapsed_ms": round(r.elapsed * 1000, 3),
        })
    if fmt == "csv":
        return _csv(
            ["suite", "check", "n", "expected", "actual", "pass"],
            [[r.suite, c.name, c.n, _plain(c.expected), _plain(c.actual), c.passed] for c in r.checks],
        )
    lines = [
        f"{'PASS' if c.passed else 'FAIL'} {c.name} [n={c.n}] expected={_plain(c.expected)} actual={_plain(c.actual)}"
        for c in r.checks
    ]
    lines.append(f"{'PASS' if r.passed else 'FAIL'} suite {r.suite}: "
                 f"{len(r.checks) - len(r.failures())}/{len(r.checks)} checks")
    return "\n".join(lines) + "\n"


def _plain(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def emit(report, fmt: str, destination: IO[str] | str | None = None) -> str:
    """Render ``report`` and write it to a path or stream; returns the text."""
    text = render(report, fmt)
    if destination is None:
        return text
    if isinstance(destination, str):
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        destination.write(text)
    return text
