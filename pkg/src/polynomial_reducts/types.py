#!/usr/bin/env python3
"""
Type definitions for polynomial reduct reports.

Provides TypedDict definitions for the JSON payloads emitted by the CLI; every result
object's ``to_dict()`` returns one of these shapes. Rationals are rendered ``"p/q"``
strings and polynomials are canonical rendered text.
"""

from __future__ import annotations

from typing import Any, Optional, TypedDict, Union


class RootDescriptorDict(TypedDict):
    """Twist-center description."""
    witness_poly: str
    all_values: bool
    rational_roots: list[str]


class TwistCertificateDict(TypedDict):
    """c*prod((x_i - center)^e_i) + center."""
    polynomial: str
    center: Union[str, RootDescriptorDict]
    base_constant: str
    exponents: dict[str, int]


class PolyEvidenceDict(TypedDict):
    """Per-polynomial test trail of a classification."""
    polynomial: str
    variables: list[str]
    unary: bool
    linear: bool
    twist: Optional[RootDescriptorDict]


class FieldWitnessDict(TypedDict):
    binary: str
    binary_variables: list[str]
    unary: str
    unary_method: str


class ClassificationDict(TypedDict):
    """Payload of ``preduct classify``."""
    case: str
    generators: Optional[list[str]]
    center: Optional[RootDescriptorDict]
    unique_center: Optional[str]
    certificates: list[TwistCertificateDict]
    evidence: list[PolyEvidenceDict]
    reason: Optional[str]
    field_witness: Optional[FieldWitnessDict]
    notes: list[str]


class StrongAdditiveDict(TypedDict):
    u_common: str
    c1: str
    c2: str
    f_adjusted: str


class StrongMultiplicativeDict(TypedDict):
    u0: str
    m: int
    n: int
    f_adjusted: str


class DecompositionDict(TypedDict):
    """Additive or multiplicative certificate."""
    kind: str
    f: str
    u: str
    v: str
    strong: Optional[Union[StrongAdditiveDict, StrongMultiplicativeDict]]
    constant_lines_x: list[str]
    constant_lines_y: list[str]


class ERVerdictDict(TypedDict):
    """Payload of ``preduct decompose``."""
    tag: str
    strong: bool
    variables: list[str]
    certificate: Optional[DecompositionDict]


class CorollaryClausesDict(TypedDict):
    both_trivial: bool
    inverse_linear: bool


class UnaryInterdefDict(TypedDict):
    interdefinable: bool
    forward: Optional[str]
    backward: Optional[str]
    explanation: str
    corollary_clauses: CorollaryClausesDict


class InterdefDict(TypedDict):
    """Payload of ``preduct interdef``."""
    verdict: str
    explanation: str
    cases: list[str]
    unary: Optional[UnaryInterdefDict]


class DefinableFamilyDict(TypedDict):
    """Payload of ``preduct unary``."""
    polynomial: str
    case: str
    degree_bound: int
    members: list[str]
    includes_all_constants: bool
    reflection: Optional[str]


class ExpansionRowDict(TypedDict):
    N: int
    image_size: int
    exponent: str


class ExpansionSummaryDict(TypedDict):
    """Payload of ``preduct expansion``."""
    polynomial: str
    family: str
    rows: list[ExpansionRowDict]
    final_exponent: Optional[str]
    csv_path: Optional[str]


class ReportEnvelopeDict(TypedDict):
    """Top-level JSON document."""
    tool_version: str
    command: str
    inputs: list[str]
    result: dict[str, Any]
    diagnostics: list[str]


class GuardsDict(TypedDict, total=False):
    max_set_size: int
    max_evaluations: int
    max_exponent: int


class ExpansionSettingsDict(TypedDict, total=False):
    precision: int
    workers: int
    ap_start: str
    ap_step: str
    gp_start: str
    gp_ratio: str


class SpecializationDict(TypedDict, total=False):
    seed: int
    attempts: int
    height: int


class SettingsDict(TypedDict, total=False):
    """Settings file document."""
    version: str
    guards: GuardsDict
    expansion: ExpansionSettingsDict
    specialization: SpecializationDict
    unary: dict[str, int]
    report: dict[str, int]
