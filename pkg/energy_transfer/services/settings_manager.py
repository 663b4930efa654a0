import os
import json
import logging
from typing import Any, Dict, Optional

from ..utils.constants import DEFAULT_SETTINGS
from ..utils.exceptions import InputError

logger = logging.getLogger(__name__)

class SettingsManager:
    def __init__(self, settings_file: Optional[str] = None):
        # a file named on the command line must exist and parse; the implicit one is optional
        self.explicit = settings_file is not None
        self.settings_file = settings_file or os.path.join(
            os.path.dirname(os.path.dirname(os.path.dirname(__file__))), 'settings.json')
        self.settings = self._load_settings()
        self._check_environment_variables()

    def _load_settings(self) -> Dict[str, Any]:
        """Load settings from file, layered over the defaults"""
        settings = self._get_default_settings()
        if not os.path.exists(self.settings_file):
            if self.explicit:
                logger.error(f"Settings file not found: {self.settings_file}")
                raise InputError(f"settings file not found: {self.settings_file}")
            return settings
        try:
            with open(self.settings_file, 'r', encoding='utf-8') as f:
                loaded = json.load(f)
            if not isinstance(loaded, dict):
                raise ValueError("settings file must hold a JSON object")
        except (OSError, ValueError) as e:
            logger.error(f"Error loading settings: {e}")
            if self.explicit:
                raise InputError(f"cannot load settings from {self.settings_file}: {e}") from e
            return settings
        unknown = sorted(set(loaded) - set(settings))
        if unknown:
            logger.warning(f"Ignoring unknown settings: {unknown}")
        settings.update({key: value for key, value in loaded.items() if key in settings})
        return settings

    def _check_environment_variables(self) -> None:
        """NO_COLOR (any non-empty value) disables colored PASS/FAIL marks"""
        if os.environ.get('NO_COLOR'):
            logger.debug("Found NO_COLOR environment variable")
            self.settings['color'] = False

    def _get_default_settings(self) -> Dict[str, Any]:
        """Return default settings"""
        return dict(DEFAULT_SETTINGS)

    def get(self, key: str, default: Any = None) -> Any:
        """Get setting value"""
        return self.settings.get(key, default)

    def as_dict(self) -> Dict[str, Any]:
        return dict(self.settings)

settings = SettingsManager()
