#!/usr/bin/env python3
"""
SettingsLoader - Load and validate preduct settings.

Settings come from a YAML file validated against the bundled JSON Schema and are merged
over the built-in defaults from ``constants``. Lookup order:

1. an explicit path (``--config``)
2. ``.preduct/settings.yaml`` in the working directory
3. built-in defaults
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, cast

import jsonschema
import yaml
from jsonschema import ValidationError as JsonSchemaValidationError

from polynomial_reducts.algebra.rational import parse_rat, render_rat
from polynomial_reducts.constants import (
    DEFAULT_AP_START,
    DEFAULT_AP_STEP,
    DEFAULT_EXPONENT_PRECISION,
    DEFAULT_GP_RATIO,
    DEFAULT_GP_START,
    DEFAULT_MAX_EVALUATIONS,
    DEFAULT_MAX_EXPONENT,
    DEFAULT_MAX_SET_SIZE,
    DEFAULT_REPORT_INDENT,
    DEFAULT_SPECIALIZATION_ATTEMPTS,
    DEFAULT_SPECIALIZATION_HEIGHT,
    DEFAULT_SPECIALIZATION_SEED,
    DEFAULT_UNARY_BOUND,
    DEFAULT_WORKERS,
    SETTINGS_DIR_NAME,
    SETTINGS_FILE_NAME,
)
from polynomial_reducts.exceptions import (
    ConfigurationError,
    FileLoadError,
    SchemaValidationError,
)
from polynomial_reducts.types import SettingsDict

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"

# Settings field -> (section, key) in the YAML document
_LAYOUT: dict[str, tuple[str, str]] = {
    "max_set_size": ("guards", "max_set_size"),
    "max_evaluations": ("guards", "max_evaluations"),
    "max_exponent": ("guards", "max_exponent"),
    "precision": ("expansion", "precision"),
    "workers": ("expansion", "workers"),
    "ap_start": ("expansion", "ap_start"),
    "ap_step": ("expansion", "ap_step"),
    "gp_start": ("expansion", "gp_start"),
    "gp_ratio": ("expansion", "gp_ratio"),
    "seed": ("specialization", "seed"),
    "attempts": ("specialization", "attempts"),
    "height": ("specialization", "height"),
    "default_bound": ("unary", "default_bound"),
    "indent": ("report", "indent"),
}

_RATIONAL_FIELDS = frozenset({"ap_start", "ap_step", "gp_start", "gp_ratio"})


@dataclass(frozen=True)
class Settings:
    """Effective settings; every field has a built-in default"""
    max_set_size: int = DEFAULT_MAX_SET_SIZE
    max_evaluations: int = DEFAULT_MAX_EVALUATIONS
    max_exponent: int = DEFAULT_MAX_EXPONENT
    precision: int = DEFAULT_EXPONENT_PRECISION
    workers: int = DEFAULT_WORKERS
    ap_start: Fraction = Fraction(DEFAULT_AP_START)
    ap_step: Fraction = Fraction(DEFAULT_AP_STEP)
    gp_start: Fraction = Fraction(DEFAULT_GP_START)
    gp_ratio: Fraction = Fraction(DEFAULT_GP_RATIO)
    seed: int = DEFAULT_SPECIALIZATION_SEED
    attempts: int = DEFAULT_SPECIALIZATION_ATTEMPTS
    height: int = DEFAULT_SPECIALIZATION_HEIGHT
    default_bound: int = DEFAULT_UNARY_BOUND
    indent: int = DEFAULT_REPORT_INDENT
    source: str = "defaults"

    def to_dict(self) -> SettingsDict:
        """Nested document in the settings-file layout (rationals as strings)."""
        document: dict[str, Any] = {"version": SCHEMA_VERSION}
        for name, value in asdict(self).items():
            if name not in _LAYOUT:
                continue
            section, key = _LAYOUT[name]
            if name in _RATIONAL_FIELDS:
                value = render_rat(value)
            document.setdefault(section, {})[key] = value
        return cast(SettingsDict, document)

    def rows(self) -> list[tuple[str, str]]:
        """Flat ``section.key`` / value pairs for display."""
        flat: list[tuple[str, str]] = []
        for name, (section, key) in _LAYOUT.items():
            value = getattr(self, name)
            shown = render_rat(value) if name in _RATIONAL_FIELDS else str(value)
            flat.append((f"{section}.{key}", shown))
        return flat


def default_settings_yaml() -> str:
    """Settings file content holding every default, as written by ``config init``."""
    document = dict(Settings().to_dict())
    return yaml.safe_dump(document, sort_keys=False)


class SettingsLoader:
    """
    Load preduct settings from YAML with schema validation.

    Example:
        >>> loader = SettingsLoader()
        >>> loader.load_from_dict({"version": "1.0", "guards": {"max_set_size": 5000}})
        >>> loader.get_settings().max_set_size
        5000
    """

    def __init__(self, schema_path: Path | None = None):
        """
        Initialize the SettingsLoader.

        Args:
            schema_path: Optional path to JSON schema file.
                        If not provided, uses bundled schema.
        """
        self.config: dict[str, Any] | None = None
        self.schema: dict[str, Any] = self._load_schema(schema_path)
        self.config_path: Path | None = None

    def _load_schema(self, schema_path: Path | None = None) -> dict[str, Any]:
        """Load the JSON schema for validation"""
        if schema_path is None:
            schema_path = Path(__file__).parent.parent / "schemas" / "settings-schema.json"

        try:
            with open(schema_path) as f:
                return cast(dict[str, Any], json.load(f))
        except FileNotFoundError:
            raise ConfigurationError(
                f"Schema file not found: {schema_path}"
            ) from None
        except json.JSONDecodeError as e:
            raise ConfigurationError(
                f"Invalid JSON in schema file: {e}"
            ) from e

    def load_from_file(self, config_path: Path) -> None:
        """
        Load settings from a YAML file.

        Raises:
            FileLoadError: If file cannot be read
            SchemaValidationError: If settings don't validate
        """
        config_path = Path(config_path)

        if not config_path.exists():
            raise FileLoadError(
                f"Settings file not found: {config_path}",
                config_file=str(config_path),
            )

        try:
            with open(config_path) as f:
                loaded = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise FileLoadError(
                f"Invalid YAML in settings file: {e}",
                config_file=str(config_path),
            ) from e
        except OSError as e:
            raise FileLoadError(
                f"Failed to read settings file: {e}",
                config_file=str(config_path),
            ) from e

        self.config = loaded if loaded is not None else {}
        self.config_path = config_path
        self._validate_config()
        logger.debug("loaded settings from %s", config_path)

    def load_from_dict(self, config: dict[str, Any]) -> None:
        """
        Load settings from a dictionary.

        Raises:
            SchemaValidationError: If settings don't validate
        """
        self.config = config
        self.config_path = None
        self._validate_config()

    def _validate_config(self) -> None:
        """
        Validate settings against JSON schema.

        Raises:
            SchemaValidationError: If validation fails
        """
        if self.config is None:
            raise ConfigurationError("No settings loaded")

        try:
            jsonschema.validate(instance=self.config, schema=self.schema)
        except JsonSchemaValidationError as e:
            error_path = " -> ".join(str(p) for p in e.absolute_path) or "root"
            raise SchemaValidationError(
                f"Settings validation failed at {error_path}: {e.message}",
                config_file=str(self.config_path) if self.config_path else None,
                config_key=".".join(str(p) for p in e.absolute_path) or None,
            ) from e

        # The schema cannot express these value constraints on rational strings
        for name, forbidden in (("ap_step", {0}), ("gp_start", {0}), ("gp_ratio", {0, 1, -1})):
            section, key = _LAYOUT[name]
            raw = self.config.get(section, {}).get(key)
            if raw is not None and parse_rat(str(raw)) in forbidden:
                raise SchemaValidationError(
                    f"Settings validation failed at {section} -> {key}: "
                    f"{raw} is not allowed",
                    config_file=str(self.config_path) if self.config_path else None,
                    config_key=f"{section}.{key}",
                )

    def get_settings(self) -> Settings:
        """Merge the loaded document over defaults."""
        if self.config is None:
            return Settings()

        overrides: dict[str, Any] = {}
        for name, (section, key) in _LAYOUT.items():
            raw = self.config.get(section, {}).get(key)
            if raw is None:
                continue
            overrides[name] = parse_rat(str(raw)) if name in _RATIONAL_FIELDS else raw

        source = str(self.config_path) if self.config_path else "dict"
        return replace(Settings(), source=source, **overrides)


def default_settings_path(base_dir: Path | None = None) -> Path:
    """Location of the working-directory settings file."""
    return (base_dir or Path.cwd()) / SETTINGS_DIR_NAME / SETTINGS_FILE_NAME


def load_settings(config_path: Path | None = None, base_dir: Path | None = None) -> Settings:
    """
    Resolve effective settings.

    Raises:
        FileLoadError: If an explicit path is missing or unreadable
        SchemaValidationError: If a settings file doesn't validate
    """
    loader = SettingsLoader()
    if config_path is not None:
        loader.load_from_file(config_path)
        return loader.get_settings()

    candidate = default_settings_path(base_dir)
    if candidate.exists():
        loader.load_from_file(candidate)
        return loader.get_settings()

    logger.debug("no settings file, using defaults")
    return Settings()
