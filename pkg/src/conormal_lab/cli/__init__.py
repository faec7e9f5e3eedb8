"""Batch interface: session files in, versioned reports out."""

from .commands import Context, run_command, run_session
from .report import SCHEMA, emit_report, make_document
from .session import SessionFile, parse_session, parse_session_text

__all__ = [
    "SCHEMA",
    "Context",
    "SessionFile",
    "emit_report",
    "make_document",
    "parse_session",
    "parse_session_text",
    "run_command",
    "run_session",
]
