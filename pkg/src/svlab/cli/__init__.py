"""Request documents in, check reports out."""

from .main import build_parser, main
from .report import (
    FAIL,
    FORMAT_VERSION,
    PASS,
    SKIP,
    CheckLine,
    Report,
    render_machine,
    render_text,
)
from .schema import SchemaError, load_document
from .sweep import SweepEntry, SweepRequest, run_sweep, summarize

__all__ = [
    "FAIL",
    "FORMAT_VERSION",
    "PASS",
    "SKIP",
    "CheckLine",
    "Report",
    "SchemaError",
    "SweepEntry",
    "SweepRequest",
    "build_parser",
    "load_document",
    "main",
    "render_machine",
    "render_text",
    "run_sweep",
    "summarize",
]
