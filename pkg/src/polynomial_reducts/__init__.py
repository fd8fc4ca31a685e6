"""Classification of polynomial reducts of (C, +, x) with exact certificates."""

__version__ = "0.1.0"
