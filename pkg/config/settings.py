"""
Application Settings
"""

import json
import logging
from typing import Any, Dict
from pathlib import Path

from config.constants import (
    DEFAULT_WORD_CAP,
    DEFAULT_ENUM_RADIUS,
    DEFAULT_ENUM_SIZE_CAP,
    DEFAULT_SEARCH_RADIUS,
    DEFAULT_DESCENT_CAP,
    DEFAULT_ORDER_PROBE,
    SETTINGS_FILE,
)

logger = logging.getLogger(__name__)


class Settings:
    """Application settings manager"""

    def __init__(self, config_file: str = SETTINGS_FILE):
        self.config_file = Path(config_file)
        self.settings: Dict[str, Any] = {}
        self.load()

    def load(self):
        """Load settings from file, layered over the defaults"""
        self.settings = self.get_default_settings()
        try:
            if self.config_file.exists():
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    stored = json.load(f)
                if not isinstance(stored, dict):
                    raise ValueError("settings file must hold a JSON object")
                self.settings.update(stored)
                logger.debug("Loaded settings from %s", self.config_file)
        except (OSError, ValueError) as e:
            logger.warning("Error loading settings from %s: %s", self.config_file, e)
            self.settings = self.get_default_settings()

    def get_default_settings(self) -> Dict[str, Any]:
        """Get default settings"""
        return {
            # Engine caps
            "word_cap": DEFAULT_WORD_CAP,
            "enum_radius": DEFAULT_ENUM_RADIUS,
            "enum_size_cap": DEFAULT_ENUM_SIZE_CAP,
            "search_radius": DEFAULT_SEARCH_RADIUS,
            "descent_cap": DEFAULT_DESCENT_CAP,
            "order_probe": DEFAULT_ORDER_PROBE,

            # Output
            "output_format": "text",
            "log_level": "WARNING",
        }

    def get(self, key: str, default: Any = None) -> Any:
        """Get a setting value"""
        return self.settings.get(key, default)

    def set(self, key: str, value: Any):
        """Set a setting value"""
        self.settings[key] = value


def load_settings(config_file: str = SETTINGS_FILE) -> Settings:
    """Load application settings"""
    return Settings(config_file)
