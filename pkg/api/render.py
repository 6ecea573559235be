"""
Rendering of report documents as JSON, aligned text or TSV.

All three renderings carry the same numbers: text and TSV are flattenings
of the JSON document.
"""
import json
import logging
import sys
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Tuple

import jsonschema
import pandas as pd

from api.schemas import ReportDocument
from lib.config import Config
from lib.errors import InvariantViolation

logger = logging.getLogger(__name__)

BOLD = "\033[1m"
RESET = "\033[0m"


@lru_cache(maxsize=4)
def _load_schema(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def document_payload(doc: ReportDocument) -> Dict[str, Any]:
    payload = doc.model_dump(mode="json")
    if payload.get("table") is None:
        payload.pop("table", None)
    return payload


def validate(payload: Dict[str, Any]) -> None:
    """Check a JSON payload against the shipped report schema."""
    schema = _load_schema(str(Config.SCHEMA_PATH))
    try:
        jsonschema.validate(instance=payload, schema=schema)
    except jsonschema.ValidationError as e:
        logger.error(f"report failed schema validation at {list(e.absolute_path)}: {e.message}")
        raise InvariantViolation(f"report does not match {Config.SCHEMA_PATH.name}: {e.message}")


def render_json(doc: ReportDocument) -> str:
    payload = document_payload(doc)
    validate(payload)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def flatten(value: Any, prefix: str = "") -> Iterator[Tuple[str, Any]]:
    """Yield (dotted.path, scalar) pairs in key order."""
    if isinstance(value, dict):
        for key in sorted(value):
            yield from flatten(value[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(value, list):
        for i, item in enumerate(value):
            yield from flatten(item, f"{prefix}[{i}]")
    else:
        yield prefix, value


def _scalar(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _use_color(stream) -> bool:
    return not Config.NO_COLOR and hasattr(stream, "isatty") and stream.isatty()


def render_text(doc: ReportDocument, stream=None) -> str:
    stream = stream if stream is not None else sys.stdout
    color = _use_color(stream)
    payload = document_payload(doc)

    lines: List[str] = []
    for section in ("command", "results", "provenance", "table"):
        if section not in payload:
            continue
        header = f"[{section}]"
        lines.append(f"{BOLD}{header}{RESET}" if color else header)
        pairs = list(flatten(payload[section]))
        width = max((len(k) for k, _ in pairs), default=0)
        lines.extend(f"  {k.ljust(width)} : {_scalar(v)}" for k, v in pairs)
    lines.append(f"schema_version : {payload['schema_version']}")
    return "\n".join(lines) + "\n"


def render_tsv(doc: ReportDocument) -> str:
    payload = document_payload(doc)
    if doc.table is not None:
        frame = pd.DataFrame(payload["table"])
    else:
        frame = pd.DataFrame(
            [{"path": k, "value": _scalar(v)} for k, v in flatten(payload["results"])],
            columns=["path", "value"],
        )
    return frame.to_csv(sep="\t", index=False)


def render(doc: ReportDocument, fmt: str, stream=None) -> str:
    if fmt == "json":
        return render_json(doc)
    if fmt == "text":
        return render_text(doc, stream)
    return render_tsv(doc)
