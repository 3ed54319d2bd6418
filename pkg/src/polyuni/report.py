"""JSON report documents for witness runs. Graphs travel as base64 planar_code."""

from __future__ import annotations

import base64
from typing import Any, Optional

from .embedding import Polyhedron, RotationSystem
from .planar_code import HEADER, decode_record, write_planar_code
from .witness import STAGES, WitnessReport

CHECK_KEYS = ("degree_sequence", "planar", "three_connected", "non_isomorphic")
SOURCE_KEYS = {"degree_sequence": "same_degree_sequence"}

REPORT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["input", "stage", "transform", "output", "checks", "diagnostics"],
    "properties": {
        "input": {"type": "string", "contentEncoding": "base64"},
        "stage": {"enum": list(STAGES)},
        "transform": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["kind", "face", "params"],
                    "properties": {
                        "kind": {"type": "string"},
                        "face": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                        "params": {"type": "object"},
                    },
                },
            ]
        },
        "output": {"oneOf": [{"type": "null"}, {"type": "string", "contentEncoding": "base64"}]},
        "checks": {
            "type": "object",
            "required": list(CHECK_KEYS),
            "properties": {k: {"type": "boolean"} for k in CHECK_KEYS},
            "additionalProperties": False,
        },
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
}


def encode_graph(g: Polyhedron) -> str:
    return base64.b64encode(write_planar_code([g])).decode("ascii")


def decode_graph(text: str) -> RotationSystem:
    return decode_record(base64.b64decode(text), len(HEADER))[0]


def report_document(report: WitnessReport, extra: Optional[dict[str, Any]] = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "input": encode_graph(report.input),
        "stage": report.stage,
        "transform": report.transform.as_dict() if report.transform is not None else None,
        "output": encode_graph(report.output) if report.output is not None else None,
        "checks": {k: bool(report.checks.get(SOURCE_KEYS.get(k, k), False)) for k in CHECK_KEYS},
        "diagnostics": list(report.diagnostics),
    }
    if extra:
        doc.update(extra)
    return doc
