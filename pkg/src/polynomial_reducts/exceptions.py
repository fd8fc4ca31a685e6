#!/usr/bin/env python3
"""
Custom exception hierarchy for polynomial reduct classification.

Provides specific exception types for different error categories
with enhanced context and debugging information.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class PolynomialReductsError(Exception):
    """Base exception for all library errors."""

    def __init__(
        self,
        message: str,
        operation: str | None = None,
        context: dict[str, str] | None = None
    ):
        super().__init__(message)
        self.message = message
        self.operation = operation
        self.context = context or {}

    def __str__(self) -> str:
        """Enhanced error message with context."""
        parts = [self.message]

        if self.operation:
            parts.append(f"Operation: {self.operation}")

        if self.context:
            context_str = ", ".join(f"{k}={v}" for k, v in self.context.items())
            parts.append(f"Context: {context_str}")

        return " | ".join(parts)


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets [start, end) into a parsed text"""
    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid span {self.start}..{self.end}")


class ParseError(PolynomialReductsError):
    """Raised when polynomial text cannot be parsed."""

    def __init__(
        self,
        message: str,
        kind: str,
        span: SourceSpan,
        line: int | None = None,
        **kwargs: Any
    ):
        super().__init__(message, **kwargs)
        self.kind = kind
        self.span = span
        self.line = line

    def with_line(self, line: int) -> ParseError:
        """Copy of this error tagged with a 1-based line number."""
        return ParseError(
            self.message,
            kind=self.kind,
            span=self.span,
            line=line,
            operation=self.operation,
            context=self.context,
        )

    def __str__(self) -> str:
        """Parse error with kind, location and optional line."""
        parts = [f"{self.kind} error: {self.message}"]

        if self.line is not None:
            parts.append(f"Line: {self.line}")

        parts.append(f"Span: {self.span.start}..{self.span.end}")
        return " | ".join(parts)


class PreconditionError(PolynomialReductsError):
    """Raised when an operation is called outside its domain."""

    def __init__(
        self,
        message: str,
        requirement: str | None = None,
        **kwargs: Any
    ):
        super().__init__(message, **kwargs)
        self.requirement = requirement

    def __str__(self) -> str:
        """Precondition error with the violated requirement."""
        parts = [self.message]

        if self.operation:
            parts.append(f"Operation: {self.operation}")

        if self.requirement:
            parts.append(f"Requirement: {self.requirement}")

        return " | ".join(parts)


class ShapeError(PreconditionError):
    """Raised when a polynomial has the wrong variable shape (not bivariate, not unary)."""

    def __init__(
        self,
        message: str,
        expected_shape: str | None = None,
        actual_variables: list[str] | None = None,
        **kwargs: Any
    ):
        super().__init__(message, requirement=expected_shape, **kwargs)
        self.expected_shape = expected_shape
        self.actual_variables = actual_variables or []

    def __str__(self) -> str:
        """Shape error with expected shape and observed variables."""
        parts = [self.message]

        if self.expected_shape:
            parts.append(f"Expected: {self.expected_shape}")

        parts.append(f"Variables: {', '.join(self.actual_variables) or '(none)'}")
        return " | ".join(parts)


class EmptyCollectionError(PreconditionError):
    """Raised when a polynomial collection is empty."""


class GuardError(PolynomialReductsError):
    """Raised when a desk-scale size guard would be exceeded."""

    def __init__(
        self,
        message: str,
        guard: str | None = None,
        limit: int | None = None,
        requested: int | None = None,
        **kwargs: Any
    ):
        super().__init__(message, **kwargs)
        self.guard = guard
        self.limit = limit
        self.requested = requested

    def __str__(self) -> str:
        """Guard error with limit and requested size."""
        parts = [self.message]

        if self.guard:
            parts.append(f"Guard: {self.guard}")

        if self.limit is not None:
            parts.append(f"Limit: {self.limit}")

        if self.requested is not None:
            parts.append(f"Requested: {self.requested}")

        return " | ".join(parts)


class ConfigurationError(PolynomialReductsError):
    """Raised when settings are invalid."""

    def __init__(
        self,
        message: str,
        config_file: str | None = None,
        config_key: str | None = None,
        **kwargs: Any
    ):
        super().__init__(message, **kwargs)
        self.config_file = config_file
        self.config_key = config_key

    def __str__(self) -> str:
        """Enhanced config error with file and key info."""
        parts = [self.message]

        if self.config_file:
            parts.append(f"File: {self.config_file}")

        if self.config_key:
            parts.append(f"Key: {self.config_key}")

        return " | ".join(parts)


class SchemaValidationError(ConfigurationError):
    """Raised when a settings file doesn't validate against its schema."""


class FileLoadError(ConfigurationError):
    """Raised when a settings file cannot be read."""


class ConsistencyError(PolynomialReductsError):
    """Raised when an internal invariant fails (a certificate that does not re-expand)."""

    def __init__(
        self,
        message: str,
        expected_state: str | None = None,
        actual_state: str | None = None,
        **kwargs: Any
    ):
        super().__init__(message, **kwargs)
        self.expected_state = expected_state
        self.actual_state = actual_state

    def __str__(self) -> str:
        """Enhanced consistency error with state information."""
        parts = [self.message]

        if self.expected_state:
            parts.append(f"Expected State: {self.expected_state}")

        if self.actual_state:
            parts.append(f"Actual State: {self.actual_state}")

        return " | ".join(parts)


# Convenience functions for creating common errors
def shape_error(
    message: str,
    expected_shape: str,
    actual_variables: list[str] | None = None,
    operation: str | None = None,
) -> ShapeError:
    """Create a shape error for a polynomial with the wrong variables."""
    return ShapeError(
        message=message,
        expected_shape=expected_shape,
        actual_variables=actual_variables,
        operation=operation,
    )


def guard_error(guard: str, limit: int, requested: int, operation: str | None = None) -> GuardError:
    """Create a guard error for an oversized request."""
    return GuardError(
        message=f"{guard} exceeded ({requested} > {limit})",
        guard=guard,
        limit=limit,
        requested=requested,
        operation=operation,
    )


def consistency_error(
    message: str,
    expected_state: str | None = None,
    actual_state: str | None = None,
    **context: str
) -> ConsistencyError:
    """Create a consistency error with context."""
    return ConsistencyError(
        message=message,
        expected_state=expected_state,
        actual_state=actual_state,
        context=context or None,
    )
