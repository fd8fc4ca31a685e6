#!/usr/bin/env python3
"""
constants.py
Global constants and enums for polynomial reduct classification
"""

from __future__ import annotations

from enum import Enum, IntEnum

# =============================================================================
# ENUMS (TYPE-SAFE CONSTANTS)
# =============================================================================

class ReductCase(str, Enum):
    """The four structures a polynomial reduct is interdefinable with"""
    UNARY = "I_unary"
    VECTOR_SPACE = "II_vector_space"
    TWISTED_MULT = "III_twisted_mult"
    FULL_FIELD = "IV_full_field"


class ERTag(str, Enum):
    """Decomposition shape of a bivariate polynomial"""
    ADDITIVE = "Additive"
    MULTIPLICATIVE = "Multiplicative"
    NEITHER = "Neither"


class InterdefVerdict(str, Enum):
    """Outcome of an interdefinability query"""
    YES = "yes"
    NO = "no"
    UNDETERMINED_CASE_I = "undetermined_case_I"


class UnaryCase(str, Enum):
    """Clauses of the unary definability classification"""
    CONSTANT = "constant"
    DEGREE1 = "degree1"
    DEGREE2 = "degree2"
    DEGREE_GE3 = "degree_ge3"


class ParseErrorKind(str, Enum):
    """Parse failure categories"""
    LEX = "lex"
    SYNTAX = "syntax"
    OVERFLOW = "overflow"


class WitnessFamily(str, Enum):
    """Set families used by the expansion lab"""
    AP = "ap"
    GP = "gp"
    WITNESS = "witness"


class ContainmentMethod(str, Enum):
    """How a witness-set containment was established"""
    EXHAUSTIVE = "exhaustive"
    EXTREMAL = "extremal"


class ExitCode(IntEnum):
    """CLI process exit codes"""
    OK = 0
    FAILURE = 1
    PARSE_ERROR = 2
    EMPTY_COLLECTION = 3
    WRONG_SHAPE = 4
    GUARD_VIOLATION = 5


# =============================================================================
# DEFAULTS
# =============================================================================

TOOL_NAME = "preduct"

# Desk-scale guards
DEFAULT_MAX_SET_SIZE = 10**6
DEFAULT_MAX_EVALUATIONS = 10**8
DEFAULT_MAX_EXPONENT = 10**6

# Expansion lab
DEFAULT_EXPONENT_PRECISION = 3
DEFAULT_WORKERS = 1
DEFAULT_AP_START = 1
DEFAULT_AP_STEP = 1
DEFAULT_GP_START = 1
DEFAULT_GP_RATIO = 2
DEFAULT_DEGREE_CAP = 2
DEFAULT_GENERATORS = ("sigma",)

# Generic specialization
DEFAULT_SPECIALIZATION_SEED = 0
DEFAULT_SPECIALIZATION_ATTEMPTS = 64
DEFAULT_SPECIALIZATION_HEIGHT = 16

# Unary reducts
DEFAULT_UNARY_BOUND = 5

# Reports
DEFAULT_REPORT_INDENT = 2

# Settings file location (relative to the working directory)
SETTINGS_DIR_NAME = ".preduct"
SETTINGS_FILE_NAME = "settings.yaml"

# Internal symbol names; the parser grammar cannot produce them, so they never collide
SHIFT_SYMBOL = "_s"
OUTER_SYMBOL = "t"
