#!/usr/bin/env python3
"""
JSON report envelope shared by the analysis commands.

Serialization is byte-deterministic: keys keep the envelope's fixed order, payloads come
from the result objects' ``to_dict()`` (rationals already rendered as strings), and the
document ends with a newline.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, cast

import jsonschema
from jsonschema import ValidationError as JsonSchemaValidationError

from polynomial_reducts import __version__
from polynomial_reducts.constants import DEFAULT_REPORT_INDENT
from polynomial_reducts.exceptions import ConsistencyError
from polynomial_reducts.types import ReportEnvelopeDict

logger = logging.getLogger(__name__)

REPORT_SCHEMA_PATH = Path(__file__).parent / "schemas" / "report-schema.json"


@lru_cache(maxsize=1)
def load_report_schema() -> dict[str, Any]:
    """The bundled envelope schema."""
    with open(REPORT_SCHEMA_PATH) as f:
        return cast(dict[str, Any], json.load(f))


@dataclass(frozen=True)
class ReportEnvelope:
    """One command's output document."""
    command: str
    inputs: list[str]
    result: dict[str, Any]
    diagnostics: list[str] = field(default_factory=list)
    tool_version: str = __version__

    def to_dict(self) -> ReportEnvelopeDict:
        return {
            "tool_version": self.tool_version,
            "command": self.command,
            "inputs": list(self.inputs),
            "result": self.result,
            "diagnostics": list(self.diagnostics),
        }

    def validate(self) -> None:
        """
        Check the envelope against the bundled report schema.

        Raises:
            ConsistencyError: if the document does not validate
        """
        try:
            jsonschema.validate(instance=self.to_dict(), schema=load_report_schema())
        except JsonSchemaValidationError as e:
            path = ".".join(str(p) for p in e.absolute_path) or "root"
            raise ConsistencyError(
                f"report does not match its schema at {path}: {e.message}",
                expected_state="schema-valid report",
                actual_state=self.command,
            ) from e

    def to_json(self, indent: int = DEFAULT_REPORT_INDENT) -> str:
        """Validated, deterministic JSON text with a trailing newline."""
        self.validate()
        text = json.dumps(self.to_dict(), indent=indent, ensure_ascii=False, sort_keys=False)
        logger.debug("%s report: %d bytes", self.command, len(text))
        return text + "\n"
