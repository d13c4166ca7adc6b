"""Stable JSON rendering of analysis results.

Every document carries ``"kind"`` and ``"schema_version"`` keys; keys are
sorted and unordered collections (warnings) are emitted sorted, so equal
inputs give byte-identical text.  ``load_report`` inverts ``report_json``.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from typing import Any

from .analyze import AnalysisReport
from .basis import DimensionSeries, GrowthFit
from .rewrite import ConfluenceReport
from .textio import format_element, format_word

SCHEMA_VERSION = 1

__all__ = ["SCHEMA_VERSION", "dumps", "load_report", "report_json", "to_dict"]


def _confluence_dict(r: ConfluenceReport) -> dict[str, Any]:
    return {
        "max_len": r.max_len,
        "words_tested": r.words_tested,
        "strategies": list(r.strategies),
        "max_steps": r.max_steps,
        "passed": r.passed,
        "disagreements": [
            {"word": format_word(w), "normal_forms": {k: format_element(v) for k, v in nfs.items()}}
            for w, nfs in r.disagreements
        ],
    }


def to_dict(r) -> dict[str, Any]:
    if isinstance(r, AnalysisReport):
        body, kind = asdict(r), "analysis"
        body["warnings"] = sorted(body["warnings"])
    elif isinstance(r, DimensionSeries):
        body, kind = {"graph_name": r.graph_name, "per_length": list(r.per_length),
                      "cumulative": r.cumulative}, "dimension_series"
    elif isinstance(r, GrowthFit):
        body, kind = asdict(r), "growth_fit"
        body["window"] = list(r.window)
    elif isinstance(r, ConfluenceReport):
        body, kind = _confluence_dict(r), "confluence"
    else:
        raise TypeError(f"no JSON schema for {type(r).__name__}")
    return {"kind": kind, "schema_version": SCHEMA_VERSION, **body}


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def report_json(r) -> str:
    return dumps(to_dict(r))


def load_report(text: str):
    """Rebuild the object rendered by ``report_json``.

    Confluence reports come back as plain dicts, since their normal forms
    are only meaningful together with a graph.
    """
    d = json.loads(text)
    version = d.pop("schema_version", None)
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {version!r}")
    kind = d.pop("kind")
    if kind == "analysis":
        return AnalysisReport(**d)
    if kind == "dimension_series":
        return DimensionSeries(d["per_length"], d["graph_name"])
    if kind == "growth_fit":
        d["window"] = tuple(d["window"])
        return GrowthFit(**d)
    if kind == "confluence":
        return d
    raise ValueError(f"unknown report kind {kind!r}")
