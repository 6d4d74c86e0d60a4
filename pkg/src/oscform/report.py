"""Structured command reports with text and JSON renderings.

Values are stored as strings, bools, ints, or (nested) lists of those,
so both renderings are deterministic byte-for-byte given the same
inputs and seed.  The JSON layout is versioned by its `schema` field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = 1


def fmt(value) -> str:
    """Canonical string form for report values."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def fmt_point(point) -> str:
    return "(" + ", ".join(fmt(v) for v in point) + ")"


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    mode: str | None = None
    sampled_points: list[str] | None = None
    warnings: list[str] = field(default_factory=list)

    def add(self, key: str, value) -> None:
        self.results[key] = value

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
        }
        if self.mode is not None:
            out["mode"] = self.mode
        if self.sampled_points is not None:
            out["sampled_points"] = self.sampled_points
        if self.warnings:
            out["warnings"] = self.warnings
        return out


def _text_value(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_text_value(v) for v in value) + "]"
    return fmt(value)


def render_text(report: Report) -> str:
    lines = [f"command: {report.command}"]
    for key, value in report.inputs.items():
        lines.append(f"{key}: {_text_value(value)}")
    if report.mode is not None:
        lines.append(f"mode: {report.mode}")
    if report.sampled_points is not None:
        lines.append("sampled_points: " + _text_value(report.sampled_points))
    for key, value in report.results.items():
        lines.append(f"{key}: {_text_value(value)}")
    for message in report.warnings:
        lines.append(f"warning: {message}")
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render(report: Report, fmt_name: str) -> str:
    if fmt_name == "json":
        return render_json(report)
    return render_text(report)
