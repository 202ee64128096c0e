"""
Configuration loader for default bounds, seeds and report settings.
"""

import json
import os
from typing import Any, Dict


class Config:
    """Configuration manager for the BiHom toolkit."""

    _instance = None
    _config_data = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if self._config_data is None:
            self.load_config()

    def load_config(self, config_path: str = None):
        """
        Load configuration from JSON file.

        Args:
            config_path: Path to config file (default: config.json in project root)

        Raises:
            FileNotFoundError: If config file doesn't exist
            ValueError: If config file has invalid JSON
        """
        if config_path is None:
            config_path = os.path.join(
                os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                'config.json'
            )

        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                self._config_data = json.load(f)
        except FileNotFoundError:
            raise FileNotFoundError(
                f"Configuration file not found at: {config_path}\n"
                f"Please create config.json with the defaults and property_suites sections."
            )
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid JSON in config file: {e}")

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a config value by key (supports nested keys with dot notation).

        Args:
            key: Config key (e.g., 'defaults' or 'property_suites.yau.count')
            default: Default value if key not found

        Returns:
            Config value
        """
        value = self._config_data
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def get_defaults(self) -> Dict[str, Any]:
        """Get the default bounds, seed and output format."""
        return self._config_data.get('defaults', {})

    def get_default(self, key: str, default: Any = None) -> Any:
        return self.get_defaults().get(key, default)

    def get_suite_settings(self, suite: str) -> Dict[str, int]:
        """
        Get count and maximal dimension for a seeded property suite.

        Args:
            suite: Suite key ('yau', 'duality' or 'tensor_kernel')

        Returns:
            Dictionary with 'count', 'max_dim' and 'entry_range'
        """
        settings = dict(self.get(f'property_suites.{suite}', {}))
        settings.setdefault('entry_range', self.get('property_suites.entry_range', 3))
        return settings

    def color_enabled(self) -> bool:
        """ANSI colour for text reports; BIHOM_COLOR=0 always wins."""
        if os.environ.get('BIHOM_COLOR', '').strip() == '0':
            return False
        return bool(self.get('output.color', True))

    def reload_config(self, config_path: str = None):
        """Reload configuration from file."""
        self._config_data = None
        self.load_config(config_path)


# Global config instance
config = Config()


def get_config() -> Config:
    """Get the global configuration instance."""
    return config
