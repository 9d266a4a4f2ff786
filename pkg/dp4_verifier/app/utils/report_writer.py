"""
JSON serialization of verification reports and command outputs.
"""
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from pydantic import BaseModel

from app.models.data_models import Report

Payload = Union[BaseModel, Sequence[BaseModel], dict]


def _plain(payload: Payload) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json", by_alias=True)
    if isinstance(payload, dict):
        return payload
    return [_plain(p) for p in payload]


def to_json(payload: Payload) -> str:
    """
    JSON text with sorted keys, so equal payloads give identical text.

    Args:
        payload: a model, a list of models or a plain dict

    Returns:
        str: indented JSON ending with a newline
    """
    return json.dumps(_plain(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(payload: Payload, out: Optional[str] = None) -> None:
    """Write to the given path, or to stdout when no path is given"""
    text = to_json(payload)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def load_report(text: str) -> Report:
    """Inverse of :func:`to_json` for reports"""
    return Report.model_validate_json(text)


def strip_timings(payload: Any) -> Any:
    """Copy of a plain JSON payload without elapsed_ms fields"""
    if isinstance(payload, dict):
        return {k: strip_timings(v) for k, v in payload.items() if k != "elapsed_ms"}
    if isinstance(payload, list):
        return [strip_timings(v) for v in payload]
    return payload
