"""Render diagnostics as text, JSON, or SARIF."""

from __future__ import annotations

import json
from enum import Enum

from .clientscan import Diagnostic


class OutputFormat(str, Enum):
    Text = "text"
    Json = "json"
    Sarif = "sarif"


def render_text(diagnostics: list[Diagnostic]) -> str:
    lines = [
        f"{d.span.file}:{d.span.start_line}:{d.span.start_col} {d.rendered_message}"
        for d in diagnostics
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def _diag_obj(d: Diagnostic) -> dict:
    return {
        "file": d.span.file,
        "start_line": d.span.start_line,
        "start_col": d.span.start_col,
        "end_line": d.span.end_line,
        "end_col": d.span.end_col,
        "matched_fqn": d.matched_fqn,
        "record_fqn": d.record.fqn,
        "strategy": d.record.strategy.value,
        "library": d.record.library,
        "approximate": d.approximate,
        "message": d.record.message,
        "rendered_message": d.rendered_message,
    }


def render_json(diagnostics: list[Diagnostic]) -> str:
    return json.dumps([_diag_obj(d) for d in diagnostics], indent=2, ensure_ascii=False) + "\n"


def render_sarif(diagnostics: list[Diagnostic], tool_version: str = "0.1.0") -> str:
    results = []
    for d in diagnostics:
        results.append(
            {
                "ruleId": d.record.strategy.value,
                "level": "note" if d.approximate else "warning",
                "message": {"text": d.rendered_message},
                "locations": [
                    {
                        "physicalLocation": {
                            "artifactLocation": {"uri": d.span.file},
                            "region": {
                                "startLine": d.span.start_line,
                                "startColumn": d.span.start_col + 1,
                                "endLine": d.span.end_line,
                                "endColumn": d.span.end_col + 1,
                            },
                        }
                    }
                ],
            }
        )
    doc = {
        "$schema": "https://json.schemastore.org/sarif-2.1.0.json",
        "version": "2.1.0",
        "runs": [
            {
                "tool": {"driver": {"name": "deprscan", "version": tool_version}},
                "results": results,
            }
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render(diagnostics: list[Diagnostic], fmt: OutputFormat) -> str:
    if fmt is OutputFormat.Json:
        return render_json(diagnostics)
    if fmt is OutputFormat.Sarif:
        return render_sarif(diagnostics)
    return render_text(diagnostics)
