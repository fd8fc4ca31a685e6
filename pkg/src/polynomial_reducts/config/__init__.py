"""
Configuration module for loading and validating preduct settings.
"""

from .settings_loader import (
    Settings,
    SettingsLoader,
    default_settings_path,
    default_settings_yaml,
    load_settings,
)

__all__ = [
    "Settings",
    "SettingsLoader",
    "default_settings_path",
    "default_settings_yaml",
    "load_settings",
]
